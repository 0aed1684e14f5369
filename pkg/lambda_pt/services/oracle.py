"""
Independent numerical ground truth: fixed-step RK4 integration of the
effective-frame and lab-frame Schrodinger equations, and eigenvalues from the
characteristic polynomial.
"""

import logging
from typing import Callable, Tuple

import numpy as np

from lambda_pt.core.config import settings
from lambda_pt.core.exceptions import StepOverflow
from lambda_pt.models.integrator import RECOMMENDED_PHASE_STEP, IntegratorConfig
from lambda_pt.models.params import PtParams, SystemParams
from lambda_pt.models.trajectory import Frame, Trajectory
from lambda_pt.services import linalg3
from lambda_pt.services.hamiltonian import build_lab_hamiltonian, build_pt_hamiltonian
from lambda_pt.services.linalg3 import CMat3, CVec3

logger = logging.getLogger(__name__)

HamiltonianAt = Callable[[float], CMat3]


def _recorded_steps(cfg: IntegratorConfig) -> np.ndarray:
    """Step 0, every ``record_stride``-th step, and the final step."""
    steps = np.arange(0, cfg.n_steps + 1, cfg.record_stride)
    if steps[-1] != cfg.n_steps:
        steps = np.append(steps, cfg.n_steps)
    return steps


def _integrate(
    hamiltonian_at: HamiltonianAt, y0: CVec3, cfg: IntegratorConfig, hbar: float
) -> Tuple[np.ndarray, np.ndarray]:
    dt = cfg.step
    n_steps = cfg.n_steps
    recorded = set(_recorded_steps(cfg).tolist())
    limit = settings.OVERFLOW_LIMIT

    def rhs(t: float, y: CVec3) -> CVec3:
        return (-1j / hbar) * (hamiltonian_at(t) @ y)

    y = linalg3.as_cvec3(y0).copy()
    times, states = [0.0], [y.copy()]
    logger.debug(f"RK4: {n_steps} steps of dt={dt:.6g} up to t={cfg.t_end}")

    for k in range(n_steps):
        t = k * dt
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
        k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

        peak = float(np.max(np.abs(y)))
        if not np.isfinite(peak) or peak > limit:
            logger.error(f"RK4 amplitude {peak:.3e} exceeded {limit:.1e} at t={(k + 1) * dt:.6g}")
            raise StepOverflow(
                f"Amplitude magnitude {peak:.3e} exceeds {limit:.1e} at step {k + 1}."
            )
        if k + 1 in recorded:
            times.append((k + 1) * dt)
            states.append(y.copy())

    return np.array(times), np.array(states)


def rk4_constant(
    h: CMat3, b0: CVec3, cfg: IntegratorConfig, hbar: float = 1.0
) -> Tuple[np.ndarray, np.ndarray]:
    """
    RK4 for a time-independent Hamiltonian; returns (times, amplitudes).

    Raises:
        StepOverflow: If any amplitude magnitude exceeds the overflow guard.
    """
    h = linalg3.as_cmat3(h)
    return _integrate(lambda _t: h, b0, cfg, hbar)


def rk4_effective(q: PtParams, b0: CVec3, cfg: IntegratorConfig) -> Trajectory:
    """
    RK4 on i hbar db/dt = H_pt b.

    Raises:
        StepOverflow: In the broken phase once amplitudes run away past the guard.
    """
    times, states = rk4_constant(build_pt_hamiltonian(q), b0, cfg, q.hbar)
    return Trajectory(times=times, amplitudes=states, frame=Frame.EFFECTIVE_B, params_snapshot=q)


def rk4_lab(p: SystemParams, c0: CVec3, cfg: IntegratorConfig) -> Trajectory:
    """
    RK4 on the time-dependent lab-frame equation, evaluating H_lab at the
    substage times. dt must resolve 1/omega_p and 1/omega_c.

    Raises:
        StepOverflow: If any amplitude magnitude exceeds the overflow guard.
    """
    times, states = _integrate(lambda t: build_lab_hamiltonian(p, t), c0, cfg, p.hbar)
    return Trajectory(times=times, amplitudes=states, frame=Frame.LAB_C, params_snapshot=p)


def char_poly_coefficients(h: CMat3) -> Tuple[complex, complex, complex]:
    """(c2, c1, c0) of det(lambda I - H) = lambda^3 + c2 lambda^2 + c1 lambda + c0."""
    h = linalg3.as_cmat3(h)
    trace = complex(np.trace(h))
    second = complex(
        h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
        + h[0, 0] * h[2, 2] - h[0, 2] * h[2, 0]
        + h[1, 1] * h[2, 2] - h[1, 2] * h[2, 1]
    )
    return -trace, second, -linalg3.det(h)


def char_poly_eigen_oracle(h: CMat3) -> Tuple[complex, complex, complex]:
    """
    Eigenvalues as roots of the characteristic polynomial.

    Raises:
        NoConvergence: Propagated from the cubic solver.
    """
    return linalg3.cubic_roots(*char_poly_coefficients(h))


def recommended_dt(
    rate_scale: float, hbar: float = 1.0, target: float = RECOMMENDED_PHASE_STEP
) -> float:
    """Largest dt with dt * rate_scale / hbar <= target."""
    if rate_scale <= 0:
        raise ValueError("rate_scale must be positive.")
    return target * hbar / rate_scale


def lab_rate_scale(p: SystemParams) -> float:
    """Largest rate, in energy units, the lab-frame integrator must resolve."""
    frequencies = (p.omega1, p.omega2, p.omega3, p.omega_p, p.omega_c)
    return max(
        max(abs(p.hbar * w) for w in frequencies),
        max(p.gamma1, p.gamma2, p.gamma3),
        float(np.hypot(p.v_p, p.v_c)),
    )
