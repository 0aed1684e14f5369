import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from lambda_pt.core.exceptions import NoConvergence, NotHermitian, SingularMatrix
from lambda_pt.services import linalg3

components = st.floats(min_value=-5, max_value=5, allow_nan=False, allow_infinity=False)
complex_roots = st.builds(complex, components, components)


def _well_separated(roots, gap=0.5):
    return all(abs(a - b) >= gap for i, a in enumerate(roots) for b in roots[i + 1 :])


@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.tuples(complex_roots, complex_roots, complex_roots).filter(_well_separated))
def test_cubic_roots_recover_known_roots(roots):
    r1, r2, r3 = roots
    c2 = -(r1 + r2 + r3)
    c1 = r1 * r2 + r1 * r3 + r2 * r3
    c0 = -r1 * r2 * r3

    found = linalg3.cubic_roots(c2, c1, c0)

    for r in roots:
        assert min(abs(r - x) for x in found) <= 1e-8
    assert abs(sum(found) + c2) <= 1e-8 * max(1.0, abs(c2))


@settings(max_examples=1000, deadline=None)
@given(complex_roots, complex_roots, complex_roots)
def test_cubic_roots_residual_is_small(c2, c1, c0):
    limit = 1e-10 * max(1.0, abs(c0), abs(c1), abs(c2))
    for x in linalg3.cubic_roots(c2, c1, c0):
        assert abs(((x + c2) * x + c1) * x + c0) <= limit


def test_cubic_roots_with_large_dominant_root():
    roots = (1000.0, 1.0, 2.0)
    found = linalg3.cubic_roots(-1003.0, 3002.0, -2000.0)
    for r in roots:
        assert min(abs(r - x) for x in found) <= 1e-9 * r


@settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(
    st.floats(min_value=500, max_value=5000),
    st.tuples(complex_roots, complex_roots).filter(_well_separated),
)
def test_cubic_roots_mixed_scales(big, small):
    r1, (r2, r3) = big, small
    c2 = -(r1 + r2 + r3)
    c1 = r1 * r2 + r1 * r3 + r2 * r3
    c0 = -r1 * r2 * r3
    found = linalg3.cubic_roots(c2, c1, c0)
    for r in (r1, r2, r3):
        assert min(abs(r - x) for x in found) <= 1e-9 * max(1.0, abs(r))


def test_cubic_roots_triple_root():
    assert linalg3.cubic_roots(-3, 3, -1) == (1, 1, 1)
    assert linalg3.cubic_roots(0, 0, 0) == (0, 0, 0)


def test_cubic_roots_rejects_non_finite():
    with pytest.raises(NoConvergence):
        linalg3.cubic_roots(np.inf, 0, 0)


@pytest.mark.parametrize("seed", range(10))
def test_inverse_of_well_conditioned_matrix(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) + 4 * np.eye(3)

    inv = linalg3.inverse(a)

    assert linalg3.max_entry(inv @ a - np.eye(3)) <= 1e-12
    assert linalg3.max_entry(a @ inv - np.eye(3)) <= 1e-12


def test_inverse_is_scale_invariant():
    a = np.array([[2, 1, 0], [1, 3, 1], [0, 1, 4]], dtype=np.complex128)
    small = linalg3.inverse(a * 1e-6)
    assert linalg3.max_entry(small * 1e-6 - linalg3.inverse(a)) <= 1e-12


@pytest.mark.parametrize(
    "a",
    [
        np.zeros((3, 3)),
        np.array([[1, 2, 3], [2, 4, 6], [1, 1, 1]]),
    ],
)
def test_inverse_rejects_singular(a):
    with pytest.raises(SingularMatrix):
        linalg3.inverse(a)


def test_det_and_adjugate_agree_with_numpy():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert abs(linalg3.det(a) - np.linalg.det(a)) <= 1e-12
    assert linalg3.max_entry(a @ linalg3.adjugate(a) - linalg3.det(a) * np.eye(3)) <= 1e-12


def test_mat_mul_reverses_under_adjoint():
    rng = np.random.default_rng(11)
    a, b = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(2))
    lhs = linalg3.adjoint(linalg3.mat_mul(a, b))
    rhs = linalg3.mat_mul(linalg3.adjoint(b), linalg3.adjoint(a))
    assert linalg3.max_entry(lhs - rhs) <= 1e-12
    assert np.array_equal(linalg3.mat_mul(np.eye(3), a), a)


def test_adjoint_is_involution():
    a = np.arange(9).reshape(3, 3) + 1j * np.arange(9, 0, -1).reshape(3, 3)
    assert np.array_equal(linalg3.adjoint(linalg3.adjoint(a)), a)
    assert linalg3.adjoint(a)[0, 1] == np.conj(a[1, 0])


def test_positive_definite():
    assert linalg3.is_positive_definite(np.eye(3), 1e-12)
    assert not linalg3.is_positive_definite(np.diag([1.0, -1.0, 1.0]), 1e-12)
    with pytest.raises(NotHermitian):
        linalg3.is_positive_definite(np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), 1e-12)


def test_shape_and_finiteness_are_checked():
    with pytest.raises(ValueError):
        linalg3.as_cmat3(np.eye(2))
    with pytest.raises(ValueError):
        linalg3.as_cvec3([1, np.nan, 0])
