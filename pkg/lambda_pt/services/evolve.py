"""
Analytic time evolution of the level amplitudes.

The PT Hamiltonian satisfies H^3 = E^2 H, so

    U(t) = exp(-i H t / hbar) = I - i sin(Et/hbar)/E H + (cos(Et/hbar) - 1)/E^2 H^2.

Both coefficients are evaluated through sinc so that complex E (broken phase)
and E = 0 (exceptional point, where H^3 = 0) need no separate code path.
"""

import logging
from typing import Sequence, Union

import numpy as np
from scipy.linalg import expm

from lambda_pt.core.exceptions import (
    ExceptionalPointError,
    FrameMismatch,
    InvalidParams,
    StepOverflow,
)
from lambda_pt.models.params import EffectiveParams, PtParams, SystemParams
from lambda_pt.models.trajectory import Frame, ModalCoefficients, Trajectory
from lambda_pt.services import linalg3, spectral
from lambda_pt.services.hamiltonian import build_effective_hamiltonian, build_pt_hamiltonian
from lambda_pt.services.linalg3 import CMat3, CVec3

logger = logging.getLogger(__name__)

SINC_SERIES_CUTOFF = 1e-4

TimeGrid = Union[Sequence[float], np.ndarray]


def _sinc(z):
    """sin(z)/z for complex z, with the Taylor series near zero."""
    z = np.asarray(z, dtype=np.complex128)
    small = np.abs(z) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, z)
    z2 = z * z
    return np.where(small, 1 - z2 / 6 + z2 * z2 / 120, np.sin(safe) / safe)


def _sin_over_e(e: complex, t, hbar: float):
    """sin(E t / hbar) / E."""
    t = np.asarray(t, dtype=np.float64)
    return (t / hbar) * _sinc(e * t / hbar)


def _cos_minus_one_over_e2(e: complex, t, hbar: float):
    """(cos(E t / hbar) - 1) / E^2, written as -(t^2 / 2 hbar^2) sinc^2(E t / 2 hbar)."""
    t = np.asarray(t, dtype=np.float64)
    return -(t**2) / (2 * hbar**2) * _sinc(e * t / (2 * hbar)) ** 2


def _as_grid(times: TimeGrid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(times, dtype=np.float64))
    if grid.ndim != 1:
        raise ValueError("times must be a 1-D grid.")
    return grid


def _require_finite(grid: np.ndarray, amplitudes: np.ndarray) -> None:
    """
    Raises:
        StepOverflow: At the first grid time whose amplitudes are not finite.
    """
    bad = ~np.isfinite(amplitudes).all(axis=1)
    if bad.any():
        t = float(grid[np.argmax(bad)])
        logger.error(f"Analytic amplitudes overflowed at t={t:.6g}")
        raise StepOverflow(f"Amplitudes are no longer finite at t={t:.6g}.")


def propagator(q: PtParams, t: float) -> CMat3:
    """U(t) = exp(-i H t / hbar); U(0) = I exactly."""
    h = build_pt_hamiltonian(q)
    e = spectral.energy(q.gamma_pt, q.v)
    s = complex(_sin_over_e(e, t, q.hbar))
    c = complex(_cos_minus_one_over_e2(e, t, q.hbar))
    return linalg3.identity() - 1j * s * h + c * (h @ h)


def evolve_b(q: PtParams, b0: CVec3, times: TimeGrid) -> Trajectory:
    """
    Applies the propagator to ``b0`` at every grid time.

    Raises:
        StepOverflow: If broken-phase growth leaves floating-point range.
    """
    b0 = linalg3.as_cvec3(b0)
    grid = _as_grid(times)
    h = build_pt_hamiltonian(q)
    e = spectral.energy(q.gamma_pt, q.v)
    hb0 = h @ b0
    h2b0 = h @ hb0
    with np.errstate(over="ignore", invalid="ignore"):
        s = _sin_over_e(e, grid, q.hbar)
        c = _cos_minus_one_over_e2(e, grid, q.hbar)
        amplitudes = b0[None, :] - 1j * s[:, None] * hb0[None, :] + c[:, None] * h2b0[None, :]
    _require_finite(grid, amplitudes)
    return Trajectory(
        times=grid, amplitudes=amplitudes, frame=Frame.EFFECTIVE_B, params_snapshot=q
    )


def evolve_effective(e: EffectiveParams, b0: CVec3, times: TimeGrid) -> Trajectory:
    """
    Evolves under a general effective Hamiltonian (Delta != 0 or V21^p != V23^c
    allowed) with a dense matrix exponential per grid point.
    """
    b0 = linalg3.as_cvec3(b0)
    grid = _as_grid(times)
    h = build_effective_hamiltonian(e)
    with np.errstate(over="ignore", invalid="ignore"):
        amplitudes = np.array([expm(-1j * h * t / e.hbar) @ b0 for t in grid])
    _require_finite(grid, amplitudes)
    logger.debug(f"Evolved general effective Hamiltonian over {grid.size} points.")
    return Trajectory(
        times=grid, amplitudes=amplitudes, frame=Frame.EFFECTIVE_B, params_snapshot=e
    )


def modal_coefficients(q: PtParams, b0: CVec3) -> ModalCoefficients:
    """
    C'' = D^-1 b0.

    Raises:
        ExceptionalPointError: At the exceptional point.
    """
    d = spectral.similarity_matrix(q)
    c = linalg3.inverse(d) @ linalg3.as_cvec3(b0)
    return ModalCoefficients(c1pp=complex(c[0]), c2pp=complex(c[1]), c3pp=complex(c[2]))


def reconstruct_from_modes(q: PtParams, modes: ModalCoefficients, t: float) -> CVec3:
    """b(t) = D (C1'' e^{-iEt/hbar}, C2'' e^{+iEt/hbar}, C3'')."""
    e = spectral.energy(q.gamma_pt, q.v)
    phase = np.exp(-1j * e * t / q.hbar)
    c1, c2, c3 = modes.as_array()
    return spectral.similarity_matrix(q) @ np.array([c1 * phase, c2 / phase, c3])


def closed_form_b_ground(q: PtParams, t: float) -> CVec3:
    """
    Amplitudes at time ``t`` for the atom starting in |1>.

        b1 = v^2/E^2 + (v^2 - gamma^2)/E^2 cos(Et) - gamma/E sin(Et)
        b2 = -i v/E sin(Et) - i gamma v/E^2 (cos(Et) - 1)
        b3 = v^2/E^2 (cos(Et) - 1)

    b1 is evaluated as 1 + (v^2 - gamma^2)(cos - 1)/E^2 - gamma sin/E, which is
    the same expression, finite at E = 0. Complex E gives the broken-phase
    cosh/sinh forms.
    """
    e = spectral.energy(q.gamma_pt, q.v)
    g, v = q.gamma_pt, q.v
    s = complex(_sin_over_e(e, t, q.hbar))
    c = complex(_cos_minus_one_over_e2(e, t, q.hbar))
    return np.array(
        [
            1 + (v**2 - g**2) * c - g * s,
            -1j * v * s - 1j * g * v * c,
            v**2 * c,
        ],
        dtype=np.complex128,
    )


def printed_b_ground(q: PtParams, t: float) -> CVec3:
    """
    Ground-start amplitudes exactly as they appear in the source derivation,
    kept only for auditing. Its b1 does not satisfy b1(0) = 1.

    Raises:
        ExceptionalPointError: At the exceptional point (division by E).
    """
    if spectral.classify_regime(q).is_exceptional_point:
        raise ExceptionalPointError("The printed amplitudes divide by E = 0.")
    e = spectral.energy(q.gamma_pt, q.v)
    g, v = q.gamma_pt, q.v
    x = e * t / q.hbar
    sin, cos = np.sin(x), np.cos(x)
    return np.array(
        [
            v**2 / e**2 * (cos + 1) + 1j * g / e * sin - g**2 / e**2 * sin,
            -1j * v / e * sin - 1j * g * v / e**2 * (cos - 1),
            v**2 / e**2 * (cos - 1),
        ],
        dtype=np.complex128,
    )


def _lab_factors(times: np.ndarray, p: SystemParams) -> np.ndarray:
    """
    Per-level factors C_k = b_k * f_k(t): the common envelope e^{-gamma2 t/hbar}
    times the optical phases that turn the lab equation into the effective one.
    """
    p.require_lambda_reduction()
    if not p.resonance_holds:
        raise InvalidParams(
            f"omega23={p.omega2 - p.omega3} != omega_c={p.omega_c}; "
            "the frame transformation is only exact on resonance."
        )
    envelope = np.exp(-p.gamma2 * times / p.hbar)
    phases = np.stack(
        [
            np.exp(-1j * p.omega1 * times),
            np.exp(-1j * (p.omega1 + p.omega_p) * times),
            np.exp(-1j * (p.omega1 + p.omega_p - p.omega_c) * times),
        ],
        axis=1,
    )
    return envelope[:, None] * phases


def to_lab_frame(traj: Trajectory, p: SystemParams) -> Trajectory:
    """
    Maps effective amplitudes b to lab amplitudes C.

    |C_k(t)| = |b_k(t)| e^{-gamma2 t / hbar} regardless of the phase convention.

    Raises:
        FrameMismatch: If ``traj`` is already in the lab frame.
        InvalidParams: If ``p`` violates the lambda reduction or resonance.
    """
    if traj.frame != Frame.EFFECTIVE_B:
        raise FrameMismatch(f"Expected an EffectiveB trajectory, got {traj.frame.value}.")
    factors = _lab_factors(traj.times, p)
    return Trajectory(
        times=traj.times,
        amplitudes=traj.amplitudes * factors,
        frame=Frame.LAB_C,
        params_snapshot=p,
    )


def to_effective_frame(traj: Trajectory, p: SystemParams) -> Trajectory:
    """
    Inverse of ``to_lab_frame``.

    Raises:
        FrameMismatch: If ``traj`` is already in the effective frame.
    """
    if traj.frame != Frame.LAB_C:
        raise FrameMismatch(f"Expected a LabC trajectory, got {traj.frame.value}.")
    factors = _lab_factors(traj.times, p)
    return Trajectory(
        times=traj.times,
        amplitudes=traj.amplitudes / factors,
        frame=Frame.EFFECTIVE_B,
        params_snapshot=p,
    )


def populations(traj: Trajectory) -> np.ndarray:
    """|amplitude_k(t)|^2, shape (len(times), 3) with one column per level."""
    return np.abs(traj.amplitudes) ** 2


def norm(traj: Trajectory) -> np.ndarray:
    """Total population per grid point."""
    return populations(traj).sum(axis=1)
