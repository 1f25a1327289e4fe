"""High-SNR prelog of ``log|I + sum_k rho^{e_k} H_k H_k^H|`` and slope estimation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel_model import logdet_gram
from .errors import DomainError


@dataclass(frozen=True)
class PrelogSpec:
    """``r`` columns per matrix, ``N`` rows, exponents sorted nonincreasing (1 to 3 of them)."""

    r: int
    N: int
    exps: tuple[float, ...]

    def __post_init__(self) -> None:
        exps = tuple(float(e) for e in self.exps)
        object.__setattr__(self, "exps", exps)
        if int(self.r) != self.r or int(self.N) != self.N or self.r < 1 or self.N < 1:
            raise DomainError("r and N must be positive integers")
        if self.r > self.N:
            raise DomainError(f"rank r={self.r} cannot exceed N={self.N}")
        if not 1 <= len(exps) <= 3:
            raise DomainError("between one and three exponents are supported")
        if any(e < 0 or not np.isfinite(e) for e in exps):
            raise DomainError("exponents must be finite and >= 0")
        if any(exps[k] < exps[k + 1] for k in range(len(exps) - 1)):
            raise DomainError(f"exponents must be sorted nonincreasing, got {exps}")


def predicted_prelog(spec: PrelogSpec) -> float:
    """``sum_k min(r, (N - k r)^+) e_k``: each later matrix only gets leftover dimensions."""
    return float(sum(min(spec.r, max(spec.N - k * spec.r, 0)) * e for k, e in enumerate(spec.exps)))


def numeric_logdet(spec: PrelogSpec, *H: np.ndarray, rho: float) -> float:
    """``log2 |I + sum_k rho^{e_k} H_k H_k^H|`` in bits."""
    if len(H) != len(spec.exps):
        raise DomainError(f"expected {len(spec.exps)} matrices, got {len(H)}")
    for Hk in H:
        if Hk.shape != (spec.N, spec.r):
            raise DomainError(f"matrices must be {spec.N}x{spec.r}, got {Hk.shape}")
        if np.linalg.matrix_rank(Hk) < spec.r:
            raise DomainError("matrices must have full column rank")
    F = np.hstack([np.sqrt(rho**e) * Hk for e, Hk in zip(spec.exps, H)])
    return logdet_gram(F)


def random_matrices(spec: PrelogSpec, rng: np.random.Generator) -> list[np.ndarray]:
    """Complex Gaussian ``N x r`` matrices, one per exponent."""
    shape = (spec.N, spec.r)
    return [
        (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0) for _ in spec.exps
    ]


def estimate_slope(f: Callable[[float], float], rho_points: Sequence[float]) -> float:
    """Least-squares slope of ``f(rho)`` against ``log2 rho``.

    The points must span at least two decades so the O(1) terms cannot
    masquerade as slope.
    """
    rhos = np.asarray(list(rho_points), dtype=float)
    if rhos.size < 2:
        raise DomainError("need at least two rho points")
    if np.any(rhos <= 0):
        raise DomainError("rho points must be positive")
    if np.log10(rhos.max() / rhos.min()) < 2 - 1e-12:
        raise DomainError("rho points must span at least two decades")
    x = np.log2(rhos)
    y = np.array([f(r) for r in rhos], dtype=float)
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))
