"""Partially asymmetric 3-user MIMO interference channel.

Receiver ``j`` observes

    y_j = sum_i  sqrt(rho^{e(i->j)}) H[(i, j)] x_i + z_j,

with ``e(i->i) = 1``, ``e(2->1) = e(3->2) = e(1->3) = alpha2`` and
``e(3->1) = e(1->2) = e(2->3) = alpha1``.  Exponents scale *power*: a layer of
transmit power ``p`` on a link with exponent ``e`` arrives with covariance
``p * rho**e * H H^H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, NumericalError

USERS = (1, 2, 3)
COND_LIMIT = 1e6
MAX_RESAMPLES = 100
_JITTER = 1e-12


@dataclass(frozen=True)
class SystemConfig:
    """Antenna counts and interference exponents.

    Parameters
    ----------
    M, N : int
        Transmit and receive antennas per user.
    alpha1, alpha2 : float
        Strong and weak cross-link exponents, ``alpha1 > alpha2 > 0``.
    """

    M: int
    N: int
    alpha1: float
    alpha2: float

    def __post_init__(self) -> None:
        for name in ("M", "N"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        a1, a2 = float(self.alpha1), float(self.alpha2)
        if not (np.isfinite(a1) and np.isfinite(a2)):
            raise DomainError("exponents must be finite")
        if not a2 > 0:
            raise DomainError(f"alpha2 must be > 0, got {a2}")
        if not a1 > a2:
            raise DomainError(f"alpha1 must exceed alpha2 (got alpha1={a1}, alpha2={a2})")
        object.__setattr__(self, "alpha1", a1)
        object.__setattr__(self, "alpha2", a2)

    def require_theorem_range(self) -> None:
        """Raise unless ``2M <= N < 3M`` (the antenna range the closed forms cover)."""
        if not 2 * self.M <= self.N < 3 * self.M:
            raise DomainError(f"closed forms need 2M <= N < 3M, got M={self.M}, N={self.N}")


def link_exponent(config: SystemConfig, tx: int, rx: int) -> float:
    """Exponent of the link from transmitter ``tx`` to receiver ``rx``."""
    if tx not in USERS or rx not in USERS:
        raise DomainError(f"user indices must be in {USERS}, got tx={tx}, rx={rx}")
    if tx == rx:
        return 1.0
    # one step "forward" (1->2, 2->3, 3->1) is the strong link
    return config.alpha1 if rx == tx % 3 + 1 else config.alpha2


def exponent_table(config: SystemConfig) -> dict[tuple[int, int], float]:
    return {(i, j): link_exponent(config, i, j) for i in USERS for j in USERS}


@dataclass(frozen=True, eq=False)
class ChannelInstance:
    """Nine ``N x M`` complex matrices keyed by ``(tx, rx)``, plus their seed."""

    config: SystemConfig
    H: Mapping[tuple[int, int], np.ndarray]
    seed: int
    _exps: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_exps", exponent_table(self.config))

    def exponent(self, tx: int, rx: int) -> float:
        return self._exps[(tx, rx)]

    def arrival(self, tx: int, rx: int, power: float, rho: float) -> np.ndarray:
        """Amplitude factor ``sqrt(power * rho**e) H[(tx, rx)]`` of one layer at one receiver."""
        if power < 0:
            raise DomainError(f"layer power must be >= 0, got {power}")
        return np.sqrt(power * rho ** self._exps[(tx, rx)]) * self.H[(tx, rx)]

    def identical_to(self, other: "ChannelInstance") -> bool:
        """Bit-level equality of configuration, seed and every matrix."""
        return (
            self.config == other.config
            and self.seed == other.seed
            and all(np.array_equal(self.H[k], other.H[k]) for k in self.H)
            and self.H.keys() == other.H.keys()
        )


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def generate_channel(config: SystemConfig, seed: int) -> ChannelInstance:
    """Draw nine i.i.d. CN(0, 1)-entry matrices, each with condition number below 1e6.

    Matrices are drawn in row-major ``(tx, rx)`` order from a single
    ``numpy.random.default_rng(seed)`` stream, so the instance is a pure
    function of ``(config, seed)``.
    """
    seed = _check_seed(seed)
    rng = np.random.default_rng(seed)
    shape = (config.N, config.M)
    H = {}
    for key in ((i, j) for i in USERS for j in USERS):
        for _ in range(MAX_RESAMPLES):
            G = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
            s = np.linalg.svd(G, compute_uv=False)
            if s[-1] > 0 and s[0] / s[-1] < COND_LIMIT:
                break
        else:
            raise NumericalError(f"H{key} still ill-conditioned after {MAX_RESAMPLES} draws")
        G.setflags(write=False)
        H[key] = G
    return ChannelInstance(config=config, H=H, seed=seed)


def received_covariance(
    channel: ChannelInstance,
    rx: int,
    layers: Iterable[tuple[int, float]],
    rho: float,
) -> np.ndarray:
    """Sum of ``p * rho**e(tx->rx) * H H^H`` over ``(tx, p)`` layers; no noise term."""
    N = channel.config.N
    K = np.zeros((N, N), dtype=complex)
    for tx, p in layers:
        F = channel.arrival(tx, rx, p, rho)
        K += F @ F.conj().T
    return K


def logdet_gram(F: np.ndarray) -> float:
    """``log2 |I + F F^H|`` from the R factor of ``[F; I]``.

    Works on the amplitude factor directly, so powers like ``rho**alpha`` up to
    1e18 do not get squared into a covariance before the determinant is taken.
    """
    F = np.asarray(F)
    k = F.shape[1]
    if k == 0:
        return 0.0
    R = np.linalg.qr(np.vstack([F, np.eye(k)]), mode="r")
    return float(2.0 * np.sum(np.log2(np.abs(np.diag(R)))))


def _hermitian(A: np.ndarray, name: str) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"{name} must be a square matrix")
    scale = max(np.abs(A).max(), 1.0)
    if np.abs(A - A.conj().T).max() > 1e-12 * scale:
        raise DomainError(f"{name} is not Hermitian")
    return 0.5 * (A + A.conj().T)


def _cholesky(A: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(A)
    except np.linalg.LinAlgError:
        pass
    try:
        return np.linalg.cholesky(A + _JITTER * np.trace(A).real * np.eye(A.shape[0]))
    except np.linalg.LinAlgError as exc:
        raise NumericalError("Cholesky failed even after jitter; matrix is ill-conditioned") from exc


def logdet_rate(signal: np.ndarray, noise: np.ndarray) -> float:
    """``log2 |I + noise^{-1} signal|`` for PSD ``signal`` and PD ``noise``.

    The noise is whitened by its Cholesky factor ``L``; the determinant of
    ``I + L^{-1} S L^{-H}`` is read off a second Cholesky factor.
    """
    S = _hermitian(signal, "signal")
    Nz = _hermitian(noise, "noise")
    if S.shape != Nz.shape:
        raise DomainError("signal and noise must have the same shape")
    tr = np.trace(S).real
    if np.linalg.eigvalsh(S).min() < -1e-10 * max(tr, 1e-300):
        raise DomainError("signal is not positive semidefinite")
    if np.linalg.eigvalsh(Nz).min() <= 0:
        raise DomainError("noise is not positive definite")
    L = _cholesky(Nz)
    X = np.linalg.solve(L, S)
    W = np.linalg.solve(L, X.conj().T).conj().T
    W = 0.5 * (W + W.conj().T)
    C = _cholesky(np.eye(S.shape[0]) + W)
    return max(float(2.0 * np.sum(np.log2(np.diag(C).real))), 0.0)


def derive_seed(seed: int, *key: int) -> int:
    """Counter-based child seed: a pure function of ``(seed, key)``, independent of evaluation order."""
    ss = np.random.SeedSequence(_check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
