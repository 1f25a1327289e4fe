"""Finite-SNR symmetric rate of the layered rate-splitting scheme.

Each transmitter splits its message into up to three layers:

* ``c1``: decoded at both cross receivers (survives the weak link),
* ``c2``: decoded only at the receiver reached through the strong link,
* ``p``: private, arrives at the cross receivers at noise level (weak regime only).

Receiver 1 jointly decodes a set of common layers while treating the rest as
noise; every nonempty subset of that set is an error event and gives one
log-det constraint on ``(R_c1, R_c2, R_p)``.  The symmetric rate is the LP
optimum of ``R_c1 + R_c2 + R_p``.  Only receiver 1 is evaluated: the other
receivers see the same exponent pattern and differ only through their
matrices, which does not change the prelog of any constraint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .channel_model import ChannelInstance, SystemConfig, link_exponent, logdet_gram
from .closed_form import Regime, regime_of
from .errors import DomainError, UnboundedError

CLASSES = ("c1", "c2", "p")
Layer = tuple[int, str]  # (transmitter, class)


def _fmt(layers: Sequence[Layer]) -> str:
    return "{" + ",".join(f"{u}{c}" for u, c in layers) + "}"


@dataclass(frozen=True)
class LayerPlan:
    """Power split and decoding roles at receiver 1 for one regime."""

    regime: Regime
    alpha1: float
    alpha2: float
    classes: tuple[str, ...]
    decode_set: tuple[Layer, ...]
    noise_set: tuple[Layer, ...]
    private_layer: Layer | None

    def powers(self, rho: float) -> dict[str, float]:
        """Transmit power per class; sums to one for every ``rho``."""
        a1, a2 = self.alpha1, self.alpha2
        if self.regime is Regime.WEAK:
            return {"c1": 1.0 - rho**-a2, "c2": rho**-a2 - rho**-a1, "p": rho**-a1}
        if self.regime is Regime.MIXED:
            return {"c1": 1.0 - rho**-a2, "c2": rho**-a2}
        return {"c1": 1.0}

    @property
    def n_active(self) -> int:
        return len(self.classes)


def decode_catalog(config: SystemConfig) -> LayerPlan:
    regime = regime_of(config.alpha1, config.alpha2)
    a1, a2 = config.alpha1, config.alpha2
    if regime is Regime.WEAK:
        return LayerPlan(
            regime,
            a1,
            a2,
            ("c1", "c2", "p"),
            decode_set=((1, "c1"), (1, "c2"), (2, "c1"), (3, "c1"), (3, "c2")),
            noise_set=((1, "p"), (2, "c2"), (2, "p"), (3, "p")),
            private_layer=(1, "p"),
        )
    if regime is Regime.MIXED:
        return LayerPlan(
            regime,
            a1,
            a2,
            ("c1", "c2"),
            decode_set=((1, "c1"), (1, "c2"), (2, "c1"), (3, "c1"), (3, "c2")),
            noise_set=((2, "c2"),),
            private_layer=None,
        )
    # single layer per user, relabeled c1
    return LayerPlan(regime, a1, a2, ("c1",), ((1, "c1"), (2, "c1"), (3, "c1")), (), None)


def arrival_exponent(plan: LayerPlan, config: SystemConfig, layer: Layer, rx: int = 1) -> float:
    """Exponent of ``rho`` in the arrival power of ``layer`` at ``rx``, to leading order.

    Transmit powers behave like ``rho^0`` (c1 / the only layer), ``rho^-alpha2``
    (c2) or ``rho^-alpha1`` (p).
    """
    u, cls = layer
    tx_exp = {"c1": 0.0, "c2": -plan.alpha2, "p": -plan.alpha1}[cls]
    return tx_exp + link_exponent(config, u, rx)


@dataclass(frozen=True)
class RateBound:
    """``weights . (R_c1, R_c2, R_p) <= value`` in bits per channel use."""

    label: str
    weights: tuple[int, int, int]
    value: float


@dataclass(frozen=True)
class RatePoint:
    Rc1: float
    Rc2: float
    Rp: float

    @property
    def R(self) -> float:
        return self.Rc1 + self.Rc2 + self.Rp

    def satisfies(self, bounds: Sequence[RateBound], tol: float = 1e-9) -> bool:
        x = (self.Rc1, self.Rc2, self.Rp)
        return all(
            sum(w * v for w, v in zip(b.weights, x)) <= b.value + tol * (1 + abs(b.value)) for b in bounds
        ) and min(x) >= -tol


def _weights(layers: Sequence[Layer]) -> tuple[int, int, int]:
    return tuple(sum(1 for _, c in layers if c == k) for k in CLASSES)  # type: ignore[return-value]


def generate_bounds(channel: ChannelInstance, rho: float) -> list[RateBound]:
    """All subset error-event bounds at receiver 1, plus the private-stage bound (weak regime)."""
    if not rho > 1:
        raise DomainError(f"rho must exceed 1, got {rho}")
    plan = decode_catalog(channel.config)
    P = plan.powers(rho)

    def arr(layer: Layer) -> np.ndarray:
        u, c = layer
        return channel.arrival(u, 1, P[c], rho)

    N = channel.config.N
    G = np.hstack([arr(l) for l in plan.noise_set]) if plan.noise_set else np.zeros((N, 0))
    ldG = logdet_gram(G)
    out = []
    dec = plan.decode_set
    for size in range(1, len(dec) + 1):
        for S in itertools.combinations(dec, size):
            F = np.hstack([arr(l) for l in S] + [G])
            out.append(RateBound(_fmt(S), _weights(S), max(logdet_gram(F) - ldG, 0.0)))
    if plan.private_layer is not None:
        rest = [l for l in plan.noise_set if l != plan.private_layer]
        Gp = np.hstack([arr(l) for l in rest])
        val = logdet_gram(np.hstack([arr(plan.private_layer), Gp])) - logdet_gram(Gp)
        out.append(RateBound("private" + _fmt([plan.private_layer]), _weights([plan.private_layer]), max(val, 0.0)))
    return out


def max_symmetric_rate(bounds: Sequence[RateBound], plan: LayerPlan) -> RatePoint:
    """Maximize ``R_c1 + R_c2 + R_p`` by exact vertex enumeration.

    Classes the plan does not use are pinned to zero.  Raises
    :class:`UnboundedError` if some used class appears in no bound.
    """
    if not bounds:
        raise DomainError("need at least one rate bound")
    idx = [CLASSES.index(c) for c in plan.classes]
    A = np.array([[b.weights[i] for i in idx] for b in bounds], dtype=float)
    rhs = np.array([b.value for b in bounds], dtype=float)
    keep = A.any(axis=1)
    A, rhs = A[keep], rhs[keep]
    missing = [plan.classes[j] for j in range(len(idx)) if A.shape[0] == 0 or not A[:, j].any()]
    if missing:
        raise UnboundedError(f"no bound constrains layer class(es) {missing}; the LP is unbounded")
    x = _kernels.lp_vertex_max(A, rhs)
    if x.size == 0:  # the origin is always feasible, so this is a numerical failure
        raise UnboundedError("vertex enumeration found no feasible vertex")
    full = [0.0, 0.0, 0.0]
    for j, i in enumerate(idx):
        full[i] = float(x[j])
    return RatePoint(*full)


def achievable_rate_point(channel: ChannelInstance, rho: float) -> RatePoint:
    plan = decode_catalog(channel.config)
    return max_symmetric_rate(generate_bounds(channel, rho), plan)


def achievable_sym_rate(channel: ChannelInstance, rho: float) -> float:
    """Symmetric rate ``R`` in bits per channel use."""
    return achievable_rate_point(channel, rho).R
