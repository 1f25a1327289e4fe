"""Level-aligned linear deterministic model over GF(2).

Each user sends ``M`` streams of ``nx`` bits ("levels", level ``nx`` is the
most significant).  A link that delivers ``n`` levels passes the top ``n``
bits of every stream; at the receiver those bits land on levels ``1..n``, so
all arrivals are aligned at the bottom (noise floor).  On each receiver level
``l`` the ``N``-bit output is

    y_l = sum over arrivals present at level l of  G[(rx, tx)][l] @ bits_tx(l),

with ``N x M`` GF(2) blocks ``G``.  The strongest arrival's block is fixed to
``[I_M; 0]``; the others are random and resampled until every subset of the
blocks present at a level has rank ``min(N, M * size)``.

Level counts follow the exponents with ``L`` levels per unit exponent:
``floor(alpha * L)`` for a cross link, ``L`` for the direct link; the input
depth ``nx`` is the largest of the three.

Random variables are linear images of the uniform inputs, so every entropy is
the GF(2) rank of the stacked coordinate/output rows.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .channel_model import USERS, SystemConfig, link_exponent
from .closed_form import Regime, regime_of
from .errors import AssumptionError, DomainError

MAX_RESAMPLES = 100
ENUM_CAP = 2**24
_FLOOR_EPS = 1e-9


def levels_for(alpha: float, L: int) -> int:
    """``floor(alpha * L)``, robust to binary round-off such as ``0.7 * 10``."""
    return int(math.floor(alpha * L + _FLOOR_EPS))


def _pack(rows: Sequence[int], nbits: int) -> np.ndarray:
    words = max(1, (nbits + 63) // 64)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    mask = (1 << 64) - 1
    for r, v in enumerate(rows):
        for w in range(words):
            out[r, w] = (v >> (64 * w)) & mask
    return out


def _rank(rows: Sequence[int], nbits: int) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    return _kernels.gf2_rank(_pack(rows, nbits))


def _block_rank(blocks: Sequence[np.ndarray]) -> int:
    A = np.hstack(blocks).astype(np.uint8)
    cols = [int("".join(map(str, c[::-1])), 2) for c in A.T]
    return _rank(cols, A.shape[0])


@dataclass(frozen=True, eq=False)
class DetChannel:
    """A level-aligned GF(2) interference channel.

    Attributes
    ----------
    nx : int
        Levels per input stream.
    depth : dict
        ``depth[(tx, rx)]`` = number of levels of ``X_tx`` seen at ``rx``.
    blocks : dict
        ``blocks[(rx, tx)]`` has shape ``(nx, N, M)``; slice ``l - 1`` is the
        block applied at receiver level ``l`` (zero where ``tx`` is absent).
    """

    config: SystemConfig
    L: int
    regime: Regime
    nx: int
    depth: dict
    blocks: dict
    seed: int | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    # -- sizes -----------------------------------------------------------
    @property
    def nbits(self) -> int:
        return 3 * self.config.M * self.nx

    @property
    def n1(self) -> int:
        """Input bits per user."""
        return self.config.M * self.nx

    @property
    def n_a1(self) -> int:
        """Bits surviving ``g1`` (the larger of the two degraded images)."""
        return self.config.M * self.depth[self._images(1)[0]]

    @property
    def n_a2(self) -> int:
        """Bits surviving ``g2 o g1``."""
        return self.config.M * self.depth[self._images(1)[1]]

    # -- message catalog -------------------------------------------------
    def _images(self, u: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """``(g1 link, g2 o g1 link)`` of user ``u`` as ``(tx, rx)`` keys."""
        links = [(u, r) for r in USERS if (u, r) != self._whole_link(u)]
        links.sort(key=lambda k: -link_exponent(self.config, *k))
        return links[0], links[1]

    def _whole_link(self, u: int) -> tuple[int, int]:
        """The link on which ``X_u`` is received whole (no image variable)."""
        if self.regime is Regime.WEAK:
            return (u, u)
        return (u, u % 3 + 1)  # strong cross link

    def image_name(self, tx: int, rx: int) -> str:
        return f"X{tx}" if (tx, rx) == self._whole_link(tx) else f"V{tx}{rx}"

    @cached_property
    def messages(self) -> tuple[str, ...]:
        """Names that may appear in conditioning sets of the structural assumptions."""
        names = [f"V{tx}{rx}" for tx in USERS for rx in USERS if (tx, rx) != self._whole_link(tx)]
        if self.regime is not Regime.WEAK:
            names += [f"X{u}" for u in USERS]
        return tuple(sorted(names))

    def decode_set(self, rx: int, tx: int) -> frozenset[str]:
        """Messages of ``tx`` that receiver ``rx`` must decode."""
        name = self.image_name(tx, rx)
        g1, g21 = self._images(tx)
        imgs = {f"V{g1[0]}{g1[1]}", f"V{g21[0]}{g21[1]}"}
        if name.startswith("X"):
            return frozenset(imgs | {name})
        if (tx, rx) == g21:
            return frozenset({name})
        return frozenset(imgs)

    # -- bit layout ------------------------------------------------------
    def bit(self, u: int, s: int, lam: int) -> int:
        """Column of stream ``s`` (0-based), level ``lam`` (1 = least significant) of user ``u``."""
        M = self.config.M
        return (u - 1) * M * self.nx + s * self.nx + (lam - 1)

    def _top_bits(self, u: int, n: int) -> list[int]:
        return [1 << self.bit(u, s, lam) for s in range(self.config.M) for lam in range(self.nx - n + 1, self.nx + 1)]

    @cached_property
    def output_rows(self) -> dict[int, list[int]]:
        """GF(2) rows (bit masks over the 3*M*nx input bits) of every receiver output."""
        M, N = self.config.M, self.config.N
        out: dict[int, list[int]] = {}
        for rx in USERS:
            rows = []
            for lev in range(1, self.nx + 1):
                for d in range(N):
                    row = 0
                    for tx in USERS:
                        n = self.depth[(tx, rx)]
                        if n < lev:
                            continue
                        lam = lev + self.nx - n
                        blk = self.blocks[(rx, tx)][lev - 1]
                        for s in range(M):
                            if blk[d, s]:
                                row ^= 1 << self.bit(tx, s, lam)
                    rows.append(row)
            out[rx] = rows
        return out

    def rows_of(self, name: str) -> list[int]:
        """Rows of a named variable: ``X<u>``, ``V<tx><rx>`` or ``Y<rx>``."""
        kind, digits = name[0], name[1:]
        if kind == "Y" and len(digits) == 1:
            return self.output_rows[int(digits)]
        if kind == "X" and len(digits) == 1:
            return self._top_bits(int(digits), self.nx)
        if kind == "V" and len(digits) == 2:
            tx, rx = int(digits[0]), int(digits[1])
            if (tx, rx) == self._whole_link(tx):
                raise DomainError(f"{name} is not an image variable in the {self.regime} model")
            return self._top_bits(tx, self.depth[(tx, rx)])
        raise DomainError(f"unknown variable {name!r}")

    def output_matrix(self, rx: int) -> np.ndarray:
        """Dense ``(N*nx, 3*M*nx)`` 0/1 matrix of receiver ``rx``."""
        rows = self.output_rows[rx]
        return np.array([[(r >> c) & 1 for c in range(self.nbits)] for r in rows], dtype=np.uint8)


def _regime_depths(config: SystemConfig, L: int) -> tuple[Regime, int, dict]:
    regime = regime_of(config.alpha1, config.alpha2)
    depth = {}
    for tx in USERS:
        for rx in USERS:
            e = link_exponent(config, tx, rx)
            depth[(tx, rx)] = L if tx == rx else levels_for(e, L)
    nx = max(depth.values())
    return regime, nx, depth


def _validate(config: SystemConfig, L: int) -> None:
    if int(L) != L or L < 2:
        raise DomainError(f"L must be an integer >= 2, got {L}")
    config.require_theorem_range()
    for a in (config.alpha1, config.alpha2):
        if levels_for(a, L) < 1:
            raise DomainError(f"floor({a} * {L}) = 0: raise L so every link carries a level")


def build_shift_channel(config: SystemConfig, L: int, seed: int = 0) -> DetChannel:
    """Sample a level-aligned model whose level blocks are in general position."""
    _validate(config, L)
    regime, nx, depth = _regime_depths(config, L)
    M, N = config.M, config.N
    rng = np.random.default_rng(seed)
    canonical = np.vstack([np.eye(M, dtype=np.uint8), np.zeros((N - M, M), dtype=np.uint8)])
    blocks = {(rx, tx): np.zeros((nx, N, M), dtype=np.uint8) for rx in USERS for tx in USERS}
    for rx in USERS:
        top = max(USERS, key=lambda t: (depth[(t, rx)], t == rx))
        for lev in range(1, nx + 1):
            present = [t for t in USERS if depth[(t, rx)] >= lev]
            chosen: list[np.ndarray] = []
            order = sorted(present, key=lambda t: t != top)
            for t in order:
                if t == top and depth[(t, rx)] == nx:
                    cand = canonical
                else:
                    for _ in range(MAX_RESAMPLES):
                        cand = rng.integers(0, 2, size=(N, M), dtype=np.uint8)
                        if _generic_with(chosen, cand, M, N):
                            break
                    else:
                        raise DomainError(
                            f"receiver {rx}, level {lev}: no block in general position after {MAX_RESAMPLES} draws"
                        )
                chosen.append(cand)
                blocks[(rx, t)][lev - 1] = cand
    model = DetChannel(config, int(L), regime, nx, depth, blocks, seed)
    for rx in USERS:
        need = sum(config.M * model.depth[(t, rx)] for t in USERS if t != _own_image_tx(model, rx))
        got = intdec_rank(model, rx)
        if got < need:
            raise DomainError(f"receiver {rx}: interference rank {got} < {need}; interference is not decodable")
    return model


def _generic_with(chosen: list[np.ndarray], cand: np.ndarray, M: int, N: int) -> bool:
    for size in range(len(chosen) + 1):
        for sub in itertools.combinations(chosen, size):
            if _block_rank(list(sub) + [cand]) != min(N, M * (size + 1)):
                return False
    return True


def _own_image_tx(model: DetChannel, rx: int) -> int:
    return rx


def intdec_rank(model: DetChannel, rx: int) -> int:
    """Rank of the output map restricted to the interference columns at ``rx``."""
    cols_mask = 0
    for t in USERS:
        if t == rx:
            continue
        for r in model._top_bits(t, model.depth[(t, rx)]):
            cols_mask |= r
    rows = [r & cols_mask for r in model.output_rows[rx]]
    return _rank(rows, model.nbits)


# ---------------------------------------------------------------------------
# exact entropies for uniform inputs
# ---------------------------------------------------------------------------


def _names(vs: Iterable[str] | str) -> frozenset[str]:
    if isinstance(vs, str):
        return frozenset({vs})
    return frozenset(vs)


def uniform_entropy(model: DetChannel, variables: Iterable[str] | str) -> int:
    """``H(variables)`` in bits for independent uniform inputs: the GF(2) rank of their rows."""
    key = _names(variables)
    cache = model._cache
    if key not in cache:
        rows = [r for v in sorted(key) for r in model.rows_of(v)]
        cache[key] = _rank(rows, model.nbits)
    return cache[key]


def cond_entropy(model: DetChannel, target, given=()) -> int:
    t, g = _names(target), _names(given)
    return uniform_entropy(model, t | g) - uniform_entropy(model, g)


def mutual_information(model: DetChannel, a, b, given=()) -> int:
    """``I(a; b | given)`` in bits for uniform inputs."""
    A, B, C = _names(a), _names(b), _names(given)
    return (
        uniform_entropy(model, A | C)
        + uniform_entropy(model, B | C)
        - uniform_entropy(model, A | B | C)
        - uniform_entropy(model, C)
    )


# ---------------------------------------------------------------------------
# structural assumptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    equation: str
    rx: int
    detail: str
    values: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return len(set(self.values)) == 1


@dataclass(frozen=True)
class AssumptionReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> dict[tuple[str, int], bool]:
        out: dict[tuple[str, int], bool] = {}
        for r in self.results:
            out[(r.equation, r.rx)] = out.get((r.equation, r.rx), True) and r.passed
        return out

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]


def _subsets(items: Sequence[str]):
    for size in range(len(items) + 1):
        for sub in itertools.combinations(items, size):
            yield frozenset(sub)


def _fmt(s: Iterable[str]) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def check_assumptions(model: DetChannel) -> AssumptionReport:
    """Verify every structural assumption as an exact rank identity, per receiver."""
    res: list[CheckResult] = []
    msgs = model.messages
    weak = model.regime is Regime.WEAK
    for i in USERS:
        others = [u for u in USERS if u != i]
        Yi = f"Y{i}"
        arrivals = {t: model.image_name(t, i) for t in USERS}
        interferers = [arrivals[t] for t in others]
        own = arrivals[i]
        eq = "intdec" if weak else "intdec2"
        res.append(
            CheckResult(
                eq,
                i,
                f"H(Y{i}|{own}) = sum H(interference)",
                (cond_entropy(model, Yi, own), sum(uniform_entropy(model, v) for v in interferers)),
            )
        )
        A = {t: model.decode_set(i, t) for t in USERS}
        # conditioning sets range over messages this receiver decodes
        local = sorted(set(msgs) & set().union(*A.values()))
        subsets = list(_subsets(local))
        if weak:
            # self: V_ij = g1(X_i)
            g1 = model._images(i)[0]
            Vij = f"V{g1[0]}{g1[1]}"
            for S in subsets:
                if not any(A[l] <= S for l in others):
                    continue
                a = S & A[i]
                res.append(
                    CheckResult(
                        "self",
                        i,
                        f"{Vij} | {_fmt(S)}",
                        (
                            mutual_information(model, Vij, Yi, S),
                            mutual_information(model, Vij, Yi, set(interferers) | a),
                            cond_entropy(model, Vij, a),
                        ),
                    )
                )
            for j in others:
                k = next(u for u in others if u != j)
                Vji = arrivals[j]
                for S in subsets:
                    if not A[k] <= S:
                        continue
                    a = S & A[j]
                    res.append(
                        CheckResult(
                            "int",
                            i,
                            f"{Vji} | {_fmt(S)}",
                            (
                                mutual_information(model, Vji, Yi, S),
                                mutual_information(model, Vji, Yi, {f"X{i}", arrivals[k]} | a),
                                cond_entropy(model, Vji, a),
                            ),
                        )
                    )
        else:
            strong = next(t for t in others if arrivals[t].startswith("X"))
            Xj = arrivals[strong]
            for S in subsets:
                if not any(A[l] <= S for l in USERS if l != strong):
                    continue
                a = S & A[strong]
                rest = {arrivals[t] for t in USERS if t != strong}
                res.append(
                    CheckResult(
                        "strong",
                        i,
                        f"{Xj} | {_fmt(S)}",
                        (
                            mutual_information(model, Xj, Yi, S),
                            mutual_information(model, Xj, Yi, rest | a),
                            cond_entropy(model, Xj, a),
                        ),
                    )
                )
            k = strong
            for j in USERS:
                if j == k:
                    continue
                l = next(u for u in USERS if u not in (k, j))
                Vji = arrivals[j]
                for S in subsets:
                    if not (A[k] <= S or A[l] <= S):
                        continue
                    a = S & A[j]
                    res.append(
                        CheckResult(
                            "weak",
                            i,
                            f"{Vji} | {_fmt(S)}",
                            (
                                mutual_information(model, Vji, Yi, S),
                                mutual_information(model, Vji, Yi, {arrivals[l], arrivals[k]} | a),
                                cond_entropy(model, Vji, a),
                            ),
                        )
                    )
    return AssumptionReport(tuple(res))


# ---------------------------------------------------------------------------
# capacity formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermSpec:
    """``I(target; Y_rx | given)``."""

    target: tuple[str, ...]
    given: tuple[str, ...]
    rx: int = 1

    def __str__(self) -> str:
        given = "|" + ",".join(self.given) if self.given else ""
        return f"I({','.join(self.target)};Y{self.rx}{given})"


def _T(target: str, given: str = "") -> TermSpec:
    return TermSpec(tuple(target.split()), tuple(given.split()))


# each capacity term is a weighted sum of mutual informations (exact weights)
_ONE, _HALF, _THIRD = Fraction(1), Fraction(1, 2), Fraction(1, 3)
_DETCAP = {
    Regime.WEAK: [
        [(_ONE, _T("V31 V21", "V12 V32")), (_ONE, _T("X1", "V12 V21 V31"))],
        [(_HALF, _T("V21", "V12 V31")), (_HALF, _T("V12 V21 V31", "V13 V32")), (_ONE, _T("X1", "V12 V21 V31"))],
        [(_HALF, _T("V21 V31", "V12")), (_HALF, _T("V12", "V13 V21 V31")), (_ONE, _T("X1", "V12 V21 V31"))],
        [(_HALF, _T("V12 V21 V31", "V32")), (_ONE, _T("X1", "V12 V21 V31"))],
        [(_HALF, _T("V12 V21 V31", "V13")), (_ONE, _T("X1", "V12 V21 V31"))],
        [(_THIRD, _T("V12 V21 V31")), (_THIRD, _T("V12", "V13 V21 V31")), (_ONE, _T("X1", "V12 V21 V31"))],
    ],
    Regime.MIXED: [
        [(_ONE, _T("V11 V21", "V13 X3"))],
        [(_HALF, _T("V21", "V11 X3")), (_HALF, _T("V11 V21 X3", "V13 V32"))],
        [(_HALF, _T("V11 V21 X3", "V32"))],
        [(_HALF, _T("V11 V21 X3", "V13"))],
        [(_THIRD, _T("V11 V21 X3")), (_THIRD, _T("V11", "V13 V21 X3"))],
    ],
    Regime.STRONG: [
        [(_ONE, _T("V11", "V21 X3"))],
        [(_THIRD, _T("V11 V21 X3"))],
    ],
}


def capacity_terms(regime: Regime) -> list[list[tuple[Fraction, TermSpec]]]:
    return _DETCAP[regime]


def term_value(model: DetChannel, term: TermSpec) -> int:
    return mutual_information(model, term.target, f"Y{term.rx}", term.given)


@dataclass(frozen=True)
class DetCapacity:
    value: float
    term_index: int  # 1-based, first minimizing term
    terms: tuple[float, ...]


def det_sym_capacity(model: DetChannel, require_assumptions: bool = True) -> DetCapacity:
    """Minimum over the regime's capacity terms, evaluated at uniform inputs."""
    if require_assumptions:
        rep = check_assumptions(model)
        if not rep.passed:
            bad = rep.failures()[0]
            raise AssumptionError(f"{bad.equation} fails at receiver {bad.rx}: {bad.detail} -> {bad.values}")
    exact = [sum(w * term_value(model, t) for w, t in combo) for combo in _DETCAP[model.regime]]
    vals = tuple(float(v) for v in exact)
    best = min(range(len(vals)), key=lambda k: (vals[k], k))
    return DetCapacity(vals[best], best + 1, vals)


# error-event bounds at receiver 1 for the weak model, in the paper's order;
# weights count unknown (c1, c2, p) layers and are derived, not transcribed
_ERROR_EVENTS = [
    _T("X1", "V12 V21 V31"),
    _T("V12", "V13 V21 V31"),
    _T("V21", "V12 V31"),
    _T("V31", "V12 V21 V32"),
    _T("V12", "V21 V31"),
    _T("V31", "V12 V21"),
    _T("V12 V21", "V13 V31"),
    _T("V31 V21", "V12 V32"),
    _T("V12 V31", "V13 V21 V32"),
    _T("V12 V21", "V31"),
    _T("V12 V31", "V21 V32"),
    _T("V12 V21 V31", "V13 V32"),
    _T("V12 V31", "V13 V21"),
    _T("V21 V31", "V12"),
    _T("V12 V31", "V21"),
    _T("V12 V21 V31", "V32"),
    _T("V12 V21 V31", "V13"),
    _T("V12 V21 V31"),
]
REDUCED_EVENTS = (1, 2, 3, 8, 12, 14, 16, 17, 18)


def layer_weights(model: DetChannel, term: TermSpec) -> tuple[int, int, int]:
    """Count unknown layers: per user, the layers strictly between the given and target depth.

    A user's layers, innermost first, are ``c1`` (its ``g2 o g1`` image),
    ``c2`` (rest of ``g1``) and ``p`` (rest of ``X``).
    """
    counts = [0, 0, 0]
    for u in USERS:
        g1, g21 = model._images(u)
        order = {f"V{g21[0]}{g21[1]}": 1, f"V{g1[0]}{g1[1]}": 2, f"X{u}": 3}
        tgt = max((order[v] for v in term.target if v in order), default=0)
        giv = max((order[v] for v in term.given if v in order), default=0)
        for layer in range(giv + 1, tgt + 1):
            counts[layer - 1] += 1
    return tuple(counts)  # type: ignore[return-value]


def error_event_bounds(model: DetChannel) -> list[tuple[TermSpec, tuple[int, int, int], int]]:
    """The weak-regime error-event list with derived weights and uniform-input values."""
    if model.regime is not Regime.WEAK:
        raise DomainError("the error-event list is defined for the weak model only")
    return [(t, layer_weights(model, t), term_value(model, t)) for t in _ERROR_EVENTS]


def lp_symmetric_rate(bounds: Sequence[tuple[tuple[int, int, int], float]]) -> float:
    """Max ``R_c1 + R_c2 + R_p`` subject to the given weighted bounds."""
    A = np.array([w for w, _ in bounds], dtype=float)
    b = np.array([v for _, v in bounds], dtype=float)
    x = _kernels.lp_vertex_max(A, b)
    return float(x.sum())


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------


def _basis(rows: Sequence[int]) -> list[int]:
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            if h in piv:
                r ^= piv[h]
            else:
                piv[h] = r
                break
    return list(piv.values())


class _Enumerator:
    def __init__(self, model: DetChannel, pmfs: Sequence[np.ndarray]):
        B = model.nbits
        if 2**B > ENUM_CAP:
            raise DomainError(f"state space 2^{B} exceeds the enumeration cap 2^{int(math.log2(ENUM_CAP))}")
        per = model.n1
        if len(pmfs) != 3:
            raise DomainError("need one pmf per user")
        ps = []
        for p in pmfs:
            p = np.asarray(p, dtype=float)
            if p.shape != (2**per,) or np.any(p < 0) or not np.isclose(p.sum(), 1.0):
                raise DomainError(f"each pmf must be a probability vector of length 2^{per}")
            ps.append(p)
        self.model = model
        self.states = np.arange(2**B, dtype=np.uint64)
        s = self.states
        mask = np.uint64(2**per - 1)
        self.prob = (
            ps[0][(s & mask).astype(np.int64)]
            * ps[1][((s >> np.uint64(per)) & mask).astype(np.int64)]
            * ps[2][((s >> np.uint64(2 * per)) & mask).astype(np.int64)]
        )
        self._h: dict[frozenset, float] = {}

    def entropy(self, names: frozenset[str]) -> float:
        if names not in self._h:
            rows = _basis([r for v in sorted(names) for r in self.model.rows_of(v)])
            if not rows:
                self._h[names] = 0.0
            else:
                keys = _kernels.parity_keys(self.states, np.array(rows, dtype=np.uint64))
                _, inv = np.unique(keys, return_inverse=True)
                q = np.bincount(inv.ravel(), weights=self.prob)
                q = q[q > 0]
                self._h[names] = float(-(q * np.log2(q)).sum())
        return self._h[names]

    def mi(self, term: TermSpec) -> float:
        A, C = frozenset(term.target), frozenset(term.given)
        Y = frozenset({f"Y{term.rx}"})
        return self.entropy(A | C) + self.entropy(Y | C) - self.entropy(A | Y | C) - self.entropy(C)


def uniform_pmfs(model: DetChannel) -> list[np.ndarray]:
    n = 2**model.n1
    return [np.full(n, 1.0 / n) for _ in USERS]


def brute_force_terms(
    model: DetChannel,
    pmfs: Sequence[np.ndarray] | None = None,
    terms: Sequence[TermSpec] | None = None,
) -> list[tuple[TermSpec, float]]:
    """Mutual informations by exhaustive enumeration of the joint pmf.

    ``pmfs`` are per-user probability vectors over the user's ``n1`` input
    bits (bit ``s*nx + lam - 1`` is stream ``s``, level ``lam``); the default
    is uniform.  ``terms`` defaults to every distinct term of the capacity
    formula (plus the error-event list in the weak regime).
    """
    if pmfs is None:
        pmfs = uniform_pmfs(model)
    if terms is None:
        terms = all_terms(model)
    en = _Enumerator(model, pmfs)
    return [(t, en.mi(t)) for t in terms]


def all_terms(model: DetChannel) -> list[TermSpec]:
    seen: list[TermSpec] = []
    for combo in _DETCAP[model.regime]:
        for _, t in combo:
            if t not in seen:
                seen.append(t)
    if model.regime is Regime.WEAK:
        for t in _ERROR_EVENTS:
            if t not in seen:
                seen.append(t)
    return seen


# ---------------------------------------------------------------------------
# portable dump
# ---------------------------------------------------------------------------


def dump_model(model: DetChannel) -> str:
    """Header line plus one dense 0/1 row per output bit, grouped by receiver."""
    c = model.config
    lines = [
        f"# L={model.L} M={c.M} N={c.N} alpha1={c.alpha1!r} alpha2={c.alpha2!r} "
        f"seed={model.seed} regime={model.regime} nx={model.nx}",
        "# columns: user u, stream s, level l -> (u-1)*M*nx + s*nx + (l-1)",
    ]
    for rx in USERS:
        mat = model.output_matrix(rx)
        lines.append(f"Y{rx} {mat.shape[0]} {mat.shape[1]}")
        lines.extend("".join(str(int(b)) for b in row) for row in mat)
    return "\n".join(lines) + "\n"
