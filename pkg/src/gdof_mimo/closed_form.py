"""Closed-form per-user GDOF in the three exponent regimes.

Every regime is a minimum over terms, some of which are themselves maxima over
branches.  Each (term, branch) pair is a *face* of the GDOF surface; faces are
numbered 1-6 (weak), 7-10 (mixed) and 11-12 (strong) in order of appearance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .channel_model import SystemConfig
from .errors import BoundaryError, DomainError

TIE_TOL = 1e-12


class Regime(str, enum.Enum):
    WEAK = "WEAK"  # alpha1 < 1
    MIXED = "MIXED"  # alpha2 < 1 < alpha1
    STRONG = "STRONG"  # 1 < alpha2

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GdofResult:
    """GDOF value with attribution.

    ``active_term`` reads ``T<term>.b<branch>`` for min-of-max forms and
    ``case<k>.T<j>`` for the piecewise weak form.  ``boundary`` is set when the
    piecewise form had to fall back to the min-of-max evaluation.
    """

    value: float
    regime: Regime
    active_term: str
    face_id: int
    boundary: bool = False


def regime_of(alpha1: float, alpha2: float) -> Regime:
    if alpha1 == 1.0 or alpha2 == 1.0:
        raise BoundaryError(f"exponent equal to 1 is a regime boundary (alpha1={alpha1}, alpha2={alpha2})")
    if alpha1 < 1.0:
        return Regime.WEAK
    if alpha2 < 1.0:
        return Regime.MIXED
    return Regime.STRONG


def _weak_terms(c: SystemConfig) -> list[list[float]]:
    M, N, a1, a2 = c.M, c.N, c.alpha1, c.alpha2
    return [
        [M + (N - 3 * M) * a2, M + (N - 3 * M) * a1 + (3 * M - N) * a2, (3 * M - N) * a1 + N - 2 * M],
        [M + 0.5 * (N - 3 * M) * a2, 0.5 * (N - M) + 0.5 * (3 * M - N) * a2],
        [M + (N - 3 * M) * a2 / 3.0],
    ]


def _mixed_terms(c: SystemConfig) -> list[list[float]]:
    M, N, a1, a2 = c.M, c.N, c.alpha1, c.alpha2
    return [
        [float(M)],
        [(2 * M + M * a1 + (N - 3 * M) * a2) / 3.0],
        [(M + M * a1 + (N - 3 * M) * a2) / 2.0, (M + (N - 2 * M) * a1 + (3 * M - N) * a2) / 2.0],
    ]


def _strong_terms(c: SystemConfig) -> list[list[float]]:
    M, N, a1, a2 = c.M, c.N, c.alpha1, c.alpha2
    return [[float(M)], [(N - 2 * M + M * a1 + M * a2) / 3.0]]


_FACE_OFFSET = {Regime.WEAK: 0, Regime.MIXED: 6, Regime.STRONG: 10}
_TERMS = {Regime.WEAK: _weak_terms, Regime.MIXED: _mixed_terms, Regime.STRONG: _strong_terms}


def _argbest(values: list[float], maximize: bool) -> int:
    """Index of the extremum; the lowest index wins ties within TIE_TOL."""
    best = 0
    for i, v in enumerate(values[1:], start=1):
        if (v > values[best] + TIE_TOL) if maximize else (v < values[best] - TIE_TOL):
            best = i
    return best


def _min_of_max(config: SystemConfig, regime: Regime) -> GdofResult:
    terms = _TERMS[regime](config)
    branch = [_argbest(t, maximize=True) for t in terms]
    tvals = [t[b] for t, b in zip(terms, branch)]
    k = _argbest(tvals, maximize=False)
    face = _FACE_OFFSET[regime] + sum(len(t) for t in terms[:k]) + branch[k] + 1
    return GdofResult(tvals[k], regime, f"T{k + 1}.b{branch[k] + 1}", face)


def face_values(config: SystemConfig) -> dict[int, float]:
    """Value of every face expression of the regime containing ``config``."""
    regime = regime_of(config.alpha1, config.alpha2)
    flat = [v for t in _TERMS[regime](config) for v in t]
    return {_FACE_OFFSET[regime] + i + 1: v for i, v in enumerate(flat)}


def _check(config: SystemConfig, want: Regime) -> None:
    config.require_theorem_range()
    got = regime_of(config.alpha1, config.alpha2)
    if got is not want:
        raise DomainError(f"exponents ({config.alpha1}, {config.alpha2}) are in the {got} regime, not {want}")


def gdof_weak(config: SystemConfig) -> GdofResult:
    """Min-of-max GDOF for ``0 < alpha2 < alpha1 < 1``."""
    _check(config, Regime.WEAK)
    return _min_of_max(config, Regime.WEAK)


def gdof_mixed(config: SystemConfig) -> GdofResult:
    """GDOF for ``alpha2 < 1 < alpha1``."""
    _check(config, Regime.MIXED)
    return _min_of_max(config, Regime.MIXED)


def gdof_strong(config: SystemConfig) -> GdofResult:
    """GDOF for ``1 < alpha2 < alpha1``."""
    _check(config, Regime.STRONG)
    return _min_of_max(config, Regime.STRONG)


def gdof(config: SystemConfig) -> GdofResult:
    """Dispatch on the regime; exponents equal to 1 raise :class:`BoundaryError`."""
    regime = regime_of(config.alpha1, config.alpha2)
    return {Regime.WEAK: gdof_weak, Regime.MIXED: gdof_mixed, Regime.STRONG: gdof_strong}[regime](config)


def piecewise_cases(config: SystemConfig) -> list[int]:
    """Which of the four strict weak-regime case conditions hold (normally exactly one)."""
    a1, a2 = config.alpha1, config.alpha2
    hits = []
    if a1 + a2 < 1 and 2 * a2 < a1:
        hits.append(1)
    if 2 * a1 - a2 < 1 and 2 * a2 > a1 and a2 < 0.5:
        hits.append(2)
    if a1 + a2 > 1 and 2 * a1 - a2 > 1 and a2 < 0.5:
        hits.append(3)
    if a1 + a2 > 1 and a2 > 0.5:
        hits.append(4)
    return hits


# (case -> [(face, expression index into the flat weak face list)])
_CASE_FACES = {1: [1], 2: [2, 4], 3: [3, 4], 4: [5, 6]}


def gdof_piecewise_weak(config: SystemConfig) -> GdofResult:
    """Piecewise-linear weak-regime GDOF.

    When no case or more than one case matches (measure-zero boundaries), the
    min-of-max value is returned with ``boundary=True``.
    """
    _check(config, Regime.WEAK)
    cases = piecewise_cases(config)
    if len(cases) != 1:
        r = _min_of_max(config, Regime.WEAK)
        return GdofResult(r.value, r.regime, r.active_term, r.face_id, boundary=True)
    case = cases[0]
    fv = face_values(config)
    faces = _CASE_FACES[case]
    j = _argbest([fv[f] for f in faces], maximize=False)
    return GdofResult(fv[faces[j]], Regime.WEAK, f"case{case}.T{j + 1}", faces[j])


def symmetric_strong_limit(M: int, N: int, alpha: float) -> float:
    """``min{M, (N - 2M + 2M alpha)/3}``: the alpha1 = alpha2 = alpha strong-regime value."""
    return min(float(M), (N - 2 * M + 2 * M * alpha) / 3.0)
