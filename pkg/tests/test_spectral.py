import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from lambda_pt.core.exceptions import ExceptionalPointError
from lambda_pt.models.params import PtParams
from lambda_pt.models.spectral import RegimeTag
from lambda_pt.services import hamiltonian, linalg3, oracle, spectral
from tests.conftest import BROKEN_OMEGA, FIG2A_ENERGY


@st.composite
def pt_params(draw, max_ratio=5.0, min_gap=0.1):
    """(gamma_pt, v) with |gamma_pt|/v bounded and |2v^2 - gamma^2| away from zero."""
    v = draw(st.floats(min_value=0.05, max_value=1.0))
    ratio = draw(st.floats(min_value=-max_ratio, max_value=max_ratio))
    gamma = ratio * v
    assume(abs(2 * v**2 - gamma**2) >= min_gap * max(v**2, gamma**2))
    return PtParams(gamma_pt=gamma, v=v)


def test_fig2a_energy(fig2a_pt):
    e0, e_plus, e_minus = spectral.eigenvalues(fig2a_pt)
    assert e0 == 0
    assert e_plus.real == pytest.approx(0.035351803, abs=1e-9)
    assert e_plus.imag == 0.0
    assert e_minus == -e_plus


def test_broken_energy_is_imaginary(broken_pt):
    e = spectral.energy(broken_pt.gamma_pt, broken_pt.v)
    assert e.real == 0.0
    assert e.imag == pytest.approx(BROKEN_OMEGA, rel=1e-12)
    assert e.imag == pytest.approx(0.047958, abs=1e-6)


def test_zero_coupling_energy():
    assert spectral.energy(0.01, 0.0) == pytest.approx(0.01j)


def test_regimes(fig2a_pt, broken_pt, ep_pt):
    assert spectral.classify_regime(fig2a_pt).tag == RegimeTag.UNBROKEN
    assert spectral.classify_regime(broken_pt).tag == RegimeTag.BROKEN
    ep = spectral.classify_regime(ep_pt)
    assert ep.is_exceptional_point
    assert abs(ep.discriminant) < 1e-15


def test_ep_band_is_relative():
    q = PtParams(gamma_pt=1.0, v=math.sqrt(0.5) * (1 + 1e-9))
    assert spectral.classify_regime(q, ep_tol=1e-10).tag == RegimeTag.UNBROKEN
    assert spectral.classify_regime(q, ep_tol=1e-6).is_exceptional_point
    with pytest.raises(ValueError):
        spectral.classify_discriminant(1.0, 1.0, ep_tol=0.0)


@settings(max_examples=1000, deadline=None)
@given(pt_params())
def test_closed_form_eigenvalues_match_characteristic_roots(q):
    closed = spectral.eigenvalues(q)
    roots = oracle.char_poly_eigen_oracle(hamiltonian.build_pt_hamiltonian(q))
    for lam in closed:
        assert min(abs(lam - mu) for mu in roots) <= 1e-10 * q.scale


@settings(max_examples=1000, deadline=None)
@given(pt_params())
def test_eigenvectors_satisfy_eigen_equation(q):
    h = hamiltonian.build_pt_hamiltonian(q)
    e = spectral.energy(q.gamma_pt, q.v)
    for lam, phi in zip((e, -e, 0), spectral.eigenvectors(q)):
        assert linalg3.max_entry(h @ phi - lam * phi) <= 1e-12 * q.scale * linalg3.max_entry(phi)


@settings(max_examples=100, deadline=None)
@given(pt_params())
def test_metric_orthonormalizes_eigenvectors(q):
    data = spectral.spectral_data(q)
    assert spectral.verify_metric_orthonormality(data.eta, data.d_matrix) <= 1e-9
    assert linalg3.is_hermitian(data.eta, 1e-9 * linalg3.max_entry(data.eta))


@settings(max_examples=1000, deadline=None)
@given(pt_params(max_ratio=1.3))
def test_metric_orthonormality_is_tight_in_unbroken_phase(q):
    assert spectral.classify_regime(q).tag == RegimeTag.UNBROKEN
    data = spectral.spectral_data(q)
    assert spectral.verify_metric_orthonormality(data.eta, data.d_matrix) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(pt_params(max_ratio=1.3))
def test_metric_pattern_in_unbroken_phase(q):
    assert spectral.classify_regime(q).tag == RegimeTag.UNBROKEN
    eta = spectral.spectral_data(q).eta
    tol = 1e-10 * linalg3.max_entry(eta)
    assert abs(eta[0, 1].real) <= tol
    assert abs(eta[1, 2].real) <= tol
    assert abs(eta[0, 2].imag) <= tol
    assert np.all(np.abs(np.diag(eta).imag) <= tol)
    assert linalg3.is_positive_definite(eta, tol)


def test_similarity_matrix_diagonalizes(fig2a_pt, fig2b_pt, broken_pt):
    for q in (fig2a_pt, fig2b_pt, broken_pt):
        d = spectral.similarity_matrix(q)
        h = hamiltonian.build_pt_hamiltonian(q)
        e = spectral.energy(q.gamma_pt, q.v)
        diagonal = linalg3.inverse(d) @ h @ d
        assert linalg3.max_entry(diagonal - np.diag([e, -e, 0])) <= 1e-10 * q.scale


def test_metric_makes_hamiltonian_pseudo_hermitian(fig2a_pt, fig2b_pt):
    for q in (fig2a_pt, fig2b_pt):
        data = spectral.spectral_data(q)
        h = hamiltonian.build_pt_hamiltonian(q)
        assert hamiltonian.is_pseudo_hermitian(h, data.eta, 1e-10)


def test_broken_phase_uses_parity_as_witness(broken_pt):
    h = hamiltonian.build_pt_hamiltonian(broken_pt)
    data = spectral.spectral_data(broken_pt)
    assert not hamiltonian.is_pseudo_hermitian(h, data.eta, 1e-10)
    p = hamiltonian.parity_operator()
    assert hamiltonian.is_pseudo_hermitian(h, p, 1e-15)


def test_hermitian_limit_metric_is_known():
    q = PtParams(gamma_pt=0.0, v=0.1)
    eta = spectral.spectral_data(q).eta
    s = 1 / math.sqrt(2)
    u = np.array([[s, s, -s], [1, -1, 0], [s, s, s]]) / np.array([math.sqrt(2), math.sqrt(2), 1])
    expected = u @ np.diag([0.5, 0.5, 1.0]) @ u.T
    assert linalg3.max_entry(eta - expected) <= 1e-12


def test_exceptional_point_has_no_eigenbasis(ep_pt):
    with pytest.raises(ExceptionalPointError):
        spectral.eigenvectors(ep_pt)
    data = spectral.spectral_data(ep_pt)
    assert data.eta is None and data.d_matrix is None
    assert data.regime.is_exceptional_point


def test_spectral_data_is_cached_and_read_only(fig2a_pt):
    first = spectral.spectral_data(fig2a_pt)
    assert spectral.spectral_data(PtParams(gamma_pt=0.0005, v=0.025)) is first
    assert first.energy == pytest.approx(FIG2A_ENERGY)
    with pytest.raises(ValueError):
        first.eta[0, 0] = 0
