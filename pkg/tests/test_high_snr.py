import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gdof_mimo.errors import DomainError
from gdof_mimo.high_snr import PrelogSpec, estimate_slope, numeric_logdet, predicted_prelog, random_matrices


@pytest.mark.parametrize(
    "r,N,exps,value",
    [(1, 2, (1.0, 0.5, 0.3), 1.5), (2, 5, (1.0, 0.6, 0.2), 3.4), (2, 4, (0.0, 0.0, 0.0), 0.0)],
)
def test_predicted_examples(r, N, exps, value):
    assert predicted_prelog(PrelogSpec(r, N, exps)) == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize("r,N,exps", [(1, 2, (1.0, 0.5, 0.3)), (2, 5, (1.0, 0.6, 0.2))])
def test_numeric_slope_examples(r, N, exps):
    spec = PrelogSpec(r, N, exps)
    H = random_matrices(spec, np.random.default_rng(1))
    s = estimate_slope(lambda rho: numeric_logdet(spec, *H, rho=rho), [1e8, 1e10])
    assert s == pytest.approx(predicted_prelog(spec), abs=0.02)


def test_numeric_at_unit_rho():
    spec = PrelogSpec(1, 2, (1.0, 0.5, 0.3))
    H = [np.ones((2, 1), dtype=complex)] * 3
    v = numeric_logdet(spec, *H, rho=1.0)
    assert v == pytest.approx(np.log2(np.linalg.det(np.eye(2) + 3 * np.ones((2, 2))).real))
    assert v > 0


def test_spec_validation():
    with pytest.raises(DomainError):
        PrelogSpec(3, 2, (1.0,))
    with pytest.raises(DomainError):
        PrelogSpec(1, 2, (0.3, 0.5))
    with pytest.raises(DomainError):
        PrelogSpec(1, 2, (1.0, -0.1))
    spec = PrelogSpec(1, 2, (1.0, 0.5))
    with pytest.raises(DomainError):
        numeric_logdet(spec, np.ones((2, 1)), rho=10.0)
    with pytest.raises(DomainError):
        numeric_logdet(spec, np.ones((2, 1)), np.zeros((2, 1)), rho=10.0)


def test_estimate_slope_examples():
    assert estimate_slope(lambda r: 3 * np.log2(r) + 7, [1e6, 1e8, 1e10]) == pytest.approx(3.0, abs=1e-12)
    assert estimate_slope(lambda r: np.log2(1 + r), [1e8, 1e10]) == pytest.approx(1.0, abs=1e-6)
    rng = np.random.default_rng(2)
    H = (rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))) / np.sqrt(2)
    spec = PrelogSpec(2, 5, (1.0,))
    assert estimate_slope(lambda r: numeric_logdet(spec, H, rho=r), [1e8, 1e10]) == pytest.approx(2.0, abs=0.01)


def test_estimate_slope_rejects():
    with pytest.raises(DomainError):
        estimate_slope(np.log2, [1e8])
    with pytest.raises(DomainError):
        estimate_slope(np.log2, [1e8, 1e9])
    with pytest.raises(DomainError):
        estimate_slope(np.log2, [0.0, 1e9])


sorted_exps = st.lists(st.floats(0, 1.5), min_size=3, max_size=3).map(lambda v: tuple(sorted(v, reverse=True)))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.integers(0, 6), sorted_exps, st.integers(0, 2), st.floats(0, 0.5))
def test_prelog_monotone(r, extra, exps, k, bump):
    N = r + extra
    base = PrelogSpec(r, N, exps)
    e = list(exps)
    e[k] += bump
    # bump only if order is preserved
    if all(e[i] >= e[i + 1] for i in range(2)):
        assert predicted_prelog(PrelogSpec(r, N, tuple(e))) >= predicted_prelog(base) - 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), sorted_exps)
def test_full_dimension(r, exps):
    spec = PrelogSpec(r, 3 * r, exps)
    assert predicted_prelog(spec) == pytest.approx(r * sum(exps), abs=1e-12)


def test_agreement_far_above_transients():
    # closely spaced exponents converge like rho^-(gap); far out every draw agrees
    rng = np.random.default_rng(0)
    for _ in range(20):
        r = int(rng.integers(1, 4))
        N = int(rng.integers(max(2, r), 9))
        spec = PrelogSpec(r, N, tuple(sorted(rng.uniform(0, 1.5, 3), reverse=True)))
        H = random_matrices(spec, rng)
        s = estimate_slope(lambda rho: numeric_logdet(spec, *H, rho=rho), [1e40, 1e60])
        assert s == pytest.approx(predicted_prelog(spec), abs=0.01)
