"""
Hamiltonian construction at the three levels of description and the
symmetry predicates.

Parity is the level exchange |1> <-> |3>; time reversal is entry-wise
complex conjugation.
"""

import logging

import numpy as np

from lambda_pt.models.params import EffectiveParams, PtParams, SystemParams
from lambda_pt.services import linalg3
from lambda_pt.services.linalg3 import CMat3

logger = logging.getLogger(__name__)


def build_lab_hamiltonian(p: SystemParams, t: float) -> CMat3:
    """
    Lab-frame Hamiltonian at time ``t`` with rotating-wave couplings.

    The (1,3) slot is zero: the |1>-|3> transition is dipole forbidden.
    """
    pump = np.exp(-1j * p.omega_p * t)
    coupling = np.exp(-1j * p.omega_c * t)
    h = np.zeros((3, 3), dtype=np.complex128)
    h[0, 0] = -1j * p.gamma1 + p.hbar * p.omega1
    h[1, 1] = -1j * p.gamma2 + p.hbar * p.omega2
    h[2, 2] = -1j * p.gamma3 + p.hbar * p.omega3
    h[0, 1] = p.v_p * np.conj(pump)
    h[1, 0] = p.v_p * pump
    h[1, 2] = p.v_c * coupling
    h[2, 1] = p.v_c * np.conj(coupling)
    return h


def build_effective_hamiltonian(e: EffectiveParams) -> CMat3:
    return np.array(
        [
            [-1j * e.gamma_pt, e.v_p, 0],
            [e.v_p, e.delta, e.v_c],
            [0, e.v_c, 1j * e.gamma_pt + e.delta],
        ],
        dtype=np.complex128,
    )


def build_pt_hamiltonian(q: PtParams) -> CMat3:
    return np.array(
        [
            [-1j * q.gamma_pt, q.v, 0],
            [q.v, 0, q.v],
            [0, q.v, 1j * q.gamma_pt],
        ],
        dtype=np.complex128,
    )


def parity_operator() -> CMat3:
    return np.fliplr(np.eye(3)).astype(np.complex128)


def apply_pt(v) -> np.ndarray:
    """(PT) v = P conj(v)."""
    return parity_operator() @ np.conj(linalg3.as_cvec3(v))


def pt_commutator_norm(h: CMat3) -> float:
    """Max-entry magnitude of H P - P conj(H), i.e. of [H, PT]."""
    h = linalg3.as_cmat3(h)
    p = parity_operator()
    return linalg3.max_entry(h @ p - p @ np.conj(h))


def is_pseudo_hermitian(h: CMat3, eta: CMat3, tol: float) -> bool:
    """
    Checks eta H eta^-1 = H^dagger to ``tol`` relative to the largest entry of H.

    Raises:
        SingularMatrix: If ``eta`` cannot be inverted.
    """
    h = linalg3.as_cmat3(h)
    eta = linalg3.as_cmat3(eta)
    deviation = linalg3.max_entry(eta @ h @ linalg3.inverse(eta) - linalg3.adjoint(h))
    logger.debug(f"Pseudo-Hermiticity deviation: {deviation:.3e}")
    return deviation <= tol * linalg3.max_entry(h)
