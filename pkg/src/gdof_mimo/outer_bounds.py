"""Finite-SNR evaluation of side-information outer bounds with Gaussian inputs.

A *recipe* is a list of conditional differential entropies
``h(observed | gift)`` whose sum, divided by the multiplier ``k``, bounds
``R1 + R2 + R3`` up to a constant.  Observations and gifts are built from
:class:`SignalDescriptor` objects: a receiver output ``Y_rx`` or a genie
signal ``S_{B,rx} = sum_{j in B} sqrt(rho^{e(j->rx)}) H[(j, rx)] X_j + Z'``
whose noise ``Z'`` is independent of everything else.

Inputs are i.i.d. CN(0, I).  Entropies are evaluated in the factored form:
for a set of descriptors with channel block ``C`` (rows = stacked outputs,
columns = the ``3M`` input streams) and one identity noise block each, the
joint covariance is ``A A^H`` with ``A = [C | I]`` and its log-determinant
comes from the R factor of ``A^H``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .channel_model import USERS, ChannelInstance, SystemConfig
from .closed_form import Regime, regime_of
from .errors import DomainError, NumericalError

LOG2_PI_E = float(np.log2(np.pi * np.e))


@dataclass(frozen=True)
class SignalDescriptor:
    """``users`` seen at receiver ``rx`` plus a noise copy of its own.

    ``output=True`` marks the receiver's actual output ``Y_rx`` (all three
    users, the receiver noise); two equal descriptors denote one random object.
    """

    users: frozenset
    rx: int
    output: bool = False

    def __post_init__(self) -> None:
        users = frozenset(int(u) for u in self.users)
        if not users or not users <= set(USERS):
            raise DomainError(f"users must be a nonempty subset of {USERS}")
        if self.rx not in USERS:
            raise DomainError(f"rx must be in {USERS}")
        object.__setattr__(self, "users", users)

    def rotated(self, shift: int) -> "SignalDescriptor":
        f = lambda u: (u - 1 + shift) % 3 + 1  # noqa: E731
        return SignalDescriptor(frozenset(f(u) for u in self.users), f(self.rx), self.output)

    def __str__(self) -> str:
        if self.output:
            return f"Y{self.rx}"
        return "S{" + ",".join(str(u) for u in sorted(self.users)) + "}," + str(self.rx)


def Y(rx: int) -> SignalDescriptor:
    return SignalDescriptor(frozenset(USERS), rx, output=True)


def S(users: Iterable[int] | int, rx: int) -> SignalDescriptor:
    if isinstance(users, int):
        users = (users,)
    return SignalDescriptor(frozenset(users), rx)


Descriptors = Sequence[SignalDescriptor]


def _unique(descs: Iterable[SignalDescriptor]) -> list[SignalDescriptor]:
    out: list[SignalDescriptor] = []
    for d in descs:
        if d not in out:
            out.append(d)
    return out


def _channel_block(channel: ChannelInstance, rho: float, descs: Descriptors) -> np.ndarray:
    M, N = channel.config.M, channel.config.N
    C = np.zeros((N * len(descs), 3 * M), dtype=complex)
    for k, d in enumerate(descs):
        for u in d.users:
            C[k * N : (k + 1) * N, (u - 1) * M : u * M] = channel.arrival(u, d.rx, 1.0, rho)
    return C


def joint_entropy(channel: ChannelInstance, rho: float, descs: Iterable[SignalDescriptor]) -> float:
    """Differential entropy (bits) of the stacked descriptors."""
    descs = _unique(descs)
    if not descs:
        return 0.0
    C = _channel_block(channel, rho, descs)
    d = C.shape[0]
    A = np.hstack([C, np.eye(d)])
    R = np.linalg.qr(A.conj().T, mode="r")
    return float(2.0 * np.sum(np.log2(np.abs(np.diag(R)[:d]))) + d * LOG2_PI_E)


def _as_descs(observed) -> list[SignalDescriptor]:
    if isinstance(observed, (int, np.integer)):
        return [Y(int(observed))]
    if isinstance(observed, SignalDescriptor):
        return [observed]
    return list(observed)


def conditional_entropy(channel: ChannelInstance, rho: float, observed, gift: Descriptors = ()) -> float:
    """``h(observed | gift)`` in bits; ``observed`` may be a receiver index."""
    obs = _as_descs(observed)
    return joint_entropy(channel, rho, list(obs) + list(gift)) - joint_entropy(channel, rho, gift)


def conditional_covariance(channel: ChannelInstance, rho: float, observed, gift: Descriptors = ()) -> np.ndarray:
    """Schur complement ``S_Y - S_YS S_S^{-1} S_SY`` via a Cholesky factor of ``S_S``.

    Covariance-domain twin of :func:`conditional_entropy`; adequate for
    moderate ``rho`` and used to check positive semidefiniteness.
    """
    obs = _unique(_as_descs(observed))
    gift = _unique(gift)
    if any(g in obs for g in gift):
        raise DomainError("observed descriptors also appear in the gift; the entropy is degenerate")
    C = _channel_block(channel, rho, obs + gift)
    # distinct descriptors carry independent unit-variance noise
    K = C @ C.conj().T + np.eye(C.shape[0])
    ny = channel.config.N * len(obs)
    Syy = K[:ny, :ny]
    if not gift:
        return Syy
    Sss, Sys = K[ny:, ny:], K[:ny, ny:]
    try:
        L = np.linalg.cholesky(Sss)
    except np.linalg.LinAlgError:
        try:
            L = np.linalg.cholesky(Sss + 1e-12 * np.trace(Sss).real * np.eye(Sss.shape[0]))
        except np.linalg.LinAlgError as exc:
            raise NumericalError("gift covariance is singular") from exc
    W = np.linalg.solve(L, Sys.conj().T)
    cond = Syy - W.conj().T @ W
    return 0.5 * (cond + cond.conj().T)


def conditional_entropy_schur(channel: ChannelInstance, rho: float, observed, gift: Descriptors = ()) -> float:
    """``log2 |pi e Sigma_cond|`` from :func:`conditional_covariance`."""
    cond = conditional_covariance(channel, rho, observed, gift)
    sign, logdet = np.linalg.slogdet(cond)
    if sign.real <= 0:
        raise NumericalError("conditional covariance is not positive definite")
    return float(logdet / np.log(2.0) + cond.shape[0] * LOG2_PI_E)


@dataclass(frozen=True)
class SideInfoRecipe:
    """``k (R1 + R2 + R3) <= sum of h(observed | gift)`` up to a constant.

    ``terms`` are written for user 1; with ``cyclic=True`` each is repeated
    for users 2 and 3 by rotating indices, giving ``3k`` terms in total.
    """

    label: str
    k: int
    terms: tuple[tuple[tuple[SignalDescriptor, ...], tuple[SignalDescriptor, ...]], ...]
    cyclic: bool = True

    def expanded_terms(self) -> list[tuple[tuple[SignalDescriptor, ...], tuple[SignalDescriptor, ...]]]:
        if not self.cyclic:
            return list(self.terms)
        out = []
        for s in range(3):
            for obs, gift in self.terms:
                out.append((tuple(d.rotated(s) for d in obs), tuple(d.rotated(s) for d in gift)))
        return out

    def describe(self) -> str:
        parts = []
        for obs, gift in self.terms:
            o = ",".join(str(d) for d in obs)
            g = ",".join(str(d) for d in gift)
            parts.append(f"h({o}|{g})" if gift else f"h({o})")
        tail = " + rotations" if self.cyclic else ""
        return f"{self.label} [k={self.k}]: " + " + ".join(parts) + tail


def _r(label: str, k: int, *terms, cyclic: bool = True) -> SideInfoRecipe:
    return SideInfoRecipe(label, k, tuple((tuple(o), tuple(g)) for o, g in terms), cyclic)


MANY_TO_ONE = _r(
    "many-to-one",
    1,
    ((Y(1),), ()),
    ((S(2, 2), S(3, 3)), (S({2, 3}, 1),)),
    cyclic=False,
)

_TRIVIAL = _r("trivial", 1, ((S(1, 1),), ()))

_WEAK = [
    _r("w1", 1, ((Y(1),), (S({1, 3}, 2),))),
    _r("w2", 2, ((Y(1),), (S(1, 2), S(3, 1))), ((Y(1),), (S(1, 3), S(3, 2)))),
    _r("w3", 2, ((Y(1),), (S(1, 2),)), ((Y(1),), (S(1, 3), S({2, 3}, 1)))),
    _r("w4", 2, ((Y(1),), (S(3, 2),)), ((Y(1),), (S(1, 2), S({2, 3}, 1)))),
    _r("w5", 2, ((Y(1),), (S(1, 3),)), ((Y(1),), (S(1, 2), S({2, 3}, 1)))),
    MANY_TO_ONE,
]

_MIXED = [
    _TRIVIAL,
    _r("m2", 2, ((Y(1),), (S(1, 1), S(3, 1))), ((Y(1),), (S(1, 3), S(3, 2)))),
    _r("m3", 2, ((Y(1),), (S(3, 2),)), ((S(1, 1),), (S(1, 2),))),
    _r("m4", 2, ((Y(1),), (S(1, 3),)), ((S(1, 1),), (S(1, 2),))),
    MANY_TO_ONE,
]

_STRONG = [
    _TRIVIAL,
    _r("s2", 3, ((Y(1),), ()), ((S(1, 1),), (S(1, 2),)), ((S(1, 1),), (S(1, 3),))),
]


def recipe_catalog(config: SystemConfig) -> list[SideInfoRecipe]:
    """Recipes for the regime containing ``config``."""
    regime = regime_of(config.alpha1, config.alpha2)
    return list({Regime.WEAK: _WEAK, Regime.MIXED: _MIXED, Regime.STRONG: _STRONG}[regime])


def _raw_sum(channel: ChannelInstance, rho: float, recipe: SideInfoRecipe) -> float:
    return sum(conditional_entropy(channel, rho, obs, gift) for obs, gift in recipe.expanded_terms())


def evaluate_recipe(channel: ChannelInstance, rho: float, recipe: SideInfoRecipe) -> float:
    """Self-calibrated proxy for ``R1 + R2 + R3``: ``(sum(rho) - sum(1)) / k``."""
    if not rho > 0:
        raise DomainError("rho must be positive")
    return (_raw_sum(channel, rho, recipe) - _raw_sum(channel, 1.0, recipe)) / recipe.k


def many_to_one_bound(channel: ChannelInstance, rho: float) -> float:
    """``h(Y1) + h([S_{2,2}; S_{3,3}] | S_{{2,3},1})``, self-calibrated at ``rho = 1``."""
    return evaluate_recipe(channel, rho, MANY_TO_ONE)


def outer_proxies(channel: ChannelInstance, rho: float) -> dict[str, float]:
    """Sum-rate proxy of every recipe in the catalog."""
    return {r.label: evaluate_recipe(channel, rho, r) for r in recipe_catalog(channel.config)}


def min_outer(channel: ChannelInstance, rho: float) -> tuple[str, float]:
    """Tightest recipe and its sum-rate proxy; the first listed wins exact ties."""
    vals = outer_proxies(channel, rho)
    label = min(vals, key=lambda k: vals[k])
    return label, vals[label]
