"""Hot inner loops with a numba path and a pure-numpy fallback.

Three kernels dominate runtime: GF(2) rank of packed bit matrices, exact
vertex enumeration for the tiny symmetric-rate LP, and the parity keys used by
the exhaustive entropy enumerator.  Each has two implementations with
identical arithmetic; setting ``GDOF_DISABLE_NUMBA=1`` in the environment
before import selects the numpy versions.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

_DISABLED = os.environ.get("GDOF_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by GDOF_DISABLE_NUMBA")
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):  # type: ignore[no-redef]
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


USING_NUMBA = NUMBA_AVAILABLE

# ---------------------------------------------------------------------------
# GF(2) rank on rows packed into uint64 words (bit b of word w is column 64w+b)
# ---------------------------------------------------------------------------


def gf2_rank_numpy(rows: np.ndarray) -> int:
    """Rank over GF(2) of a packed ``(m, words)`` uint64 matrix."""
    a = np.array(rows, dtype=np.uint64, copy=True)
    if a.ndim != 2:
        raise ValueError("rows must be a 2-D packed array")
    m, words = a.shape
    rank = 0
    for w in range(words):
        for b in range(64):
            if rank == m:
                return rank
            mask = np.uint64(1) << np.uint64(b)
            hits = np.flatnonzero(a[rank:, w] & mask)
            if hits.size == 0:
                continue
            p = rank + hits[0]
            if p != rank:
                a[[rank, p]] = a[[p, rank]]
            below = rank + 1 + np.flatnonzero(a[rank + 1 :, w] & mask)
            if below.size:
                a[below] ^= a[rank]
            rank += 1
    return rank


def _gf2_rank_loop(rows):
    a = rows.copy()
    m, words = a.shape
    rank = 0
    one = np.uint64(1)
    for w in range(words):
        for b in range(64):
            if rank == m:
                return rank
            mask = one << np.uint64(b)
            p = -1
            for r in range(rank, m):
                if a[r, w] & mask:
                    p = r
                    break
            if p < 0:
                continue
            if p != rank:
                for k in range(words):
                    t = a[p, k]
                    a[p, k] = a[rank, k]
                    a[rank, k] = t
            for r in range(rank + 1, m):
                if a[r, w] & mask:
                    for k in range(w, words):
                        a[r, k] ^= a[rank, k]
            rank += 1
    return rank


_gf2_rank_numba = njit(cache=True)(_gf2_rank_loop) if NUMBA_AVAILABLE else None


def gf2_rank_numba(rows: np.ndarray) -> int:
    """Numba twin of :func:`gf2_rank_numpy` (falls back to it if numba is absent)."""
    a = np.ascontiguousarray(rows, dtype=np.uint64)
    if _gf2_rank_numba is None:
        return gf2_rank_numpy(a)
    return int(_gf2_rank_numba(a))


def gf2_rank(rows: np.ndarray) -> int:
    """Dispatching GF(2) rank; accepts any array convertible to uint64 ``(m, words)``."""
    a = np.ascontiguousarray(rows, dtype=np.uint64)
    if a.ndim != 2:
        raise ValueError("rows must be a 2-D packed array")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    if USING_NUMBA:
        return gf2_rank_numba(a)
    return gf2_rank_numpy(a)


# ---------------------------------------------------------------------------
# Exact vertex enumeration of {x >= 0, A x <= b}, n <= 3, maximizing sum(x)
# ---------------------------------------------------------------------------

_SINGULAR_RTOL = 1e-12


def _stack_constraints(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = A.shape[1]
    return np.vstack([A, -np.eye(n)]), np.concatenate([b, np.zeros(n)])


def _check_lp_inputs(A, b):
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
        raise ValueError("A must be (m, n) and b must be (m,)")
    if not 1 <= A.shape[1] <= 3:
        raise ValueError("vertex enumeration supports 1 to 3 variables")
    return A, b


def _cramer_batch(P: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``P[k] x = q[k]`` for k batched 1x1/2x2/3x3 systems by Cramer's rule."""
    n = P.shape[1]
    if n == 1:
        det = P[:, 0, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            x = (q[:, 0] / det)[:, None]
        return det, x
    if n == 2:
        a, bb, c, d = P[:, 0, 0], P[:, 0, 1], P[:, 1, 0], P[:, 1, 1]
        det = a * d - bb * c
        with np.errstate(divide="ignore", invalid="ignore"):
            x0 = (q[:, 0] * d - bb * q[:, 1]) / det
            x1 = (a * q[:, 1] - c * q[:, 0]) / det
        return det, np.stack([x0, x1], axis=1)

    def det3(m):
        return (
            m[:, 0, 0] * (m[:, 1, 1] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 1])
            - m[:, 0, 1] * (m[:, 1, 0] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 0])
            + m[:, 0, 2] * (m[:, 1, 0] * m[:, 2, 1] - m[:, 1, 1] * m[:, 2, 0])
        )

    det = det3(P)
    xs = []
    for j in range(3):
        Pj = P.copy()
        Pj[:, :, j] = q
        with np.errstate(divide="ignore", invalid="ignore"):
            xs.append(det3(Pj) / det)
    return det, np.stack(xs, axis=1)


def _combos(m: int, n: int) -> np.ndarray:
    return np.array(list(itertools.combinations(range(m), n)), dtype=np.int64).reshape(-1, n)


def _select_vertex(X: np.ndarray, tol: float) -> np.ndarray:
    obj = X.sum(axis=1)
    best = obj.max()
    cand = X[obj >= best - tol]
    order = np.lexsort(cand.T[::-1])  # last key is primary; reversed so column 0 is primary
    return cand[order[-1]].copy()


def lp_vertex_max_numpy(A: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Maximize ``sum(x)`` over ``{x >= 0, A x <= b}`` by enumerating all vertices.

    Ties within ``tol`` in the objective go to the lexicographically largest
    vertex.  Returns an empty array when no vertex is feasible.
    """
    A, b = _check_lp_inputs(A, b)
    n = A.shape[1]
    Af, bf = _stack_constraints(A, b)
    combos = _combos(Af.shape[0], n)
    P = Af[combos]
    q = bf[combos]
    det, X = _cramer_batch(P, q)
    scale = np.prod(np.sqrt((P * P).sum(axis=2)), axis=1)
    ok = np.abs(det) > _SINGULAR_RTOL * scale
    X = X[ok]
    if X.shape[0] == 0:
        return np.empty(0)
    slack = Af @ X.T - bf[:, None]
    feas = np.all(slack <= tol * (1.0 + np.abs(bf))[:, None], axis=0)
    X = X[feas]
    if X.shape[0] == 0:
        return np.empty(0)
    return _select_vertex(X, tol)


def _lp_vertex_loop(Af, bf, combos, tol):
    m, n = Af.shape
    out = np.empty((combos.shape[0], n))
    count = 0
    P = np.zeros((3, 3))
    Pj = np.zeros((3, 3))
    q = np.zeros(3)
    x = np.zeros(3)
    for k in range(combos.shape[0]):
        scale = 1.0
        for r in range(n):
            s = 0.0
            for c in range(n):
                P[r, c] = Af[combos[k, r], c]
                s += P[r, c] * P[r, c]
            q[r] = bf[combos[k, r]]
            scale *= np.sqrt(s)
        if n == 1:
            det = P[0, 0]
            if not abs(det) > 1e-12 * scale:
                continue
            x[0] = q[0] / det
        elif n == 2:
            det = P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0]
            if not abs(det) > 1e-12 * scale:
                continue
            x[0] = (q[0] * P[1, 1] - P[0, 1] * q[1]) / det
            x[1] = (P[0, 0] * q[1] - P[1, 0] * q[0]) / det
        else:
            det = _det3(P)
            if not abs(det) > 1e-12 * scale:
                continue
            for j in range(3):
                for r in range(3):
                    for c in range(3):
                        Pj[r, c] = q[r] if c == j else P[r, c]
                x[j] = _det3(Pj) / det
        feasible = True
        for r in range(m):
            s = 0.0
            for c in range(n):
                s += Af[r, c] * x[c]
            if s - bf[r] > tol * (1.0 + abs(bf[r])):
                feasible = False
                break
        if feasible:
            for c in range(n):
                out[count, c] = x[c]
            count += 1
    return out[:count]


def _det3(m):
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


if NUMBA_AVAILABLE:
    _det3 = njit(cache=True)(_det3)
    _lp_vertex_numba = njit(cache=True)(_lp_vertex_loop)
else:
    _lp_vertex_numba = None


def lp_vertex_max_numba(A: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Numba twin of :func:`lp_vertex_max_numpy` (falls back to it if numba is absent)."""
    A, b = _check_lp_inputs(A, b)
    if _lp_vertex_numba is None:
        return lp_vertex_max_numpy(A, b, tol)
    Af, bf = _stack_constraints(A, b)
    X = _lp_vertex_numba(Af, bf, _combos(Af.shape[0], A.shape[1]), tol)
    if X.shape[0] == 0:
        return np.empty(0)
    return _select_vertex(X, tol)


def lp_vertex_max(A: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    if USING_NUMBA:
        return lp_vertex_max_numba(A, b, tol)
    return lp_vertex_max_numpy(A, b, tol)


# ---------------------------------------------------------------------------
# Parity keys: key[s] = sum_r parity(rows[r] & states[s]) << r
# ---------------------------------------------------------------------------


def _parity64(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> np.uint64(32))
    x = x ^ (x >> np.uint64(16))
    x = x ^ (x >> np.uint64(8))
    x = x ^ (x >> np.uint64(4))
    x = x ^ (x >> np.uint64(2))
    x = x ^ (x >> np.uint64(1))
    return x & np.uint64(1)


def parity_keys_numpy(states: np.ndarray, rows: np.ndarray) -> np.ndarray:
    states = np.asarray(states, dtype=np.uint64)
    rows = np.asarray(rows, dtype=np.uint64)
    if rows.shape[0] > 64:
        raise ValueError("at most 64 rows fit a uint64 key")
    key = np.zeros(states.shape, dtype=np.uint64)
    for r, row in enumerate(rows):
        key |= _parity64(states & row) << np.uint64(r)
    return key


def _parity_keys_loop(states, rows):
    out = np.zeros(states.shape[0], dtype=np.uint64)
    one = np.uint64(1)
    for s in range(states.shape[0]):
        k = np.uint64(0)
        st = states[s]
        for r in range(rows.shape[0]):
            x = st & rows[r]
            x ^= x >> np.uint64(32)
            x ^= x >> np.uint64(16)
            x ^= x >> np.uint64(8)
            x ^= x >> np.uint64(4)
            x ^= x >> np.uint64(2)
            x ^= x >> np.uint64(1)
            k |= (x & one) << np.uint64(r)
        out[s] = k
    return out


_parity_keys_numba = njit(cache=True)(_parity_keys_loop) if NUMBA_AVAILABLE else None


def parity_keys_numba(states: np.ndarray, rows: np.ndarray) -> np.ndarray:
    states = np.ascontiguousarray(states, dtype=np.uint64)
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    if rows.shape[0] > 64:
        raise ValueError("at most 64 rows fit a uint64 key")
    if _parity_keys_numba is None:
        return parity_keys_numpy(states, rows)
    return _parity_keys_numba(states, rows)


def parity_keys(states: np.ndarray, rows: np.ndarray) -> np.ndarray:
    if USING_NUMBA:
        return parity_keys_numba(states, rows)
    return parity_keys_numpy(states, rows)
