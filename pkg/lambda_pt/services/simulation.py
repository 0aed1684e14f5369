"""
Command-level workflows shared by the CLI and the HTTP API: spectrum report,
time evolution in both frames, and the PT-breaking sweep.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from lambda_pt.core.config import settings
from lambda_pt.core.exceptions import ConfigError, ExceptionalPointError
from lambda_pt.models.integrator import IntegratorConfig
from lambda_pt.models.params import EffectiveParams, PtParams, SystemParams
from lambda_pt.models.trajectory import Frame, Trajectory
from lambda_pt.schemas.run_config import RunConfig, SweepRange
from lambda_pt.services import evolve, hamiltonian, linalg3, oracle, spectral
from lambda_pt.services.hamiltonian import build_effective_hamiltonian
from lambda_pt.services.reporting import Row

logger = logging.getLogger(__name__)

SPECTRUM_COLUMNS = [
    "gamma_pt",
    "v",
    "hbar",
    "regime",
    "discriminant",
    "re_e0",
    "im_e0",
    "re_e_plus",
    "im_e_plus",
    "re_e_minus",
    "im_e_minus",
    "pt_commutator",
    "parity_pseudo_hermitian",
]
METRIC_COLUMNS = [
    f"{part}_eta{i}{j}" for i in range(1, 4) for j in range(1, 4) for part in ("re", "im")
] + ["orthonormality_deviation", "metric_pseudo_hermitian"]
SWEEP_VALUE_COLUMNS = ["re_e_plus", "im_e_plus", "regime"]

METRIC_CHECK_TOL = 1e-10


def resolve_params(cfg: RunConfig) -> Tuple[Optional[PtParams], Optional[EffectiveParams]]:
    """
    Returns (PtParams or None, EffectiveParams or None).

    PtParams is None only when lab-frame inputs break the PT conditions, in
    which case the general effective Hamiltonian has to be used.

    Raises:
        ConfigError: If neither ``pt`` nor ``system`` is given.
        InvalidParams: If the system parameters do not reduce to the effective frame.
    """
    if cfg.pt is not None:
        return cfg.pt, None
    if cfg.system is None:
        raise ConfigError("The run config needs a 'pt' or a 'system' section.")
    eff = cfg.system.effective(impose_resonance=cfg.impose_resonance)
    if eff.is_pt_symmetric:
        return eff.to_pt(), eff
    logger.info(
        f"System is not PT-symmetric (delta={eff.delta}, v_p={eff.v_p}, v_c={eff.v_c}); "
        "using the general effective Hamiltonian."
    )
    return None, eff


def require_pt(cfg: RunConfig) -> PtParams:
    """
    Raises:
        InvalidParams: If the configured system is not PT-symmetric.
    """
    q, eff = resolve_params(cfg)
    if q is None:
        return eff.to_pt()
    return q


def _complex_cells(prefix: str, z: complex) -> Row:
    return {f"re_{prefix}": float(z.real), f"im_{prefix}": float(z.imag)}


def spectrum_row(q: PtParams, include_metric: bool = True, ep_tol: Optional[float] = None) -> Row:
    """
    Eigenvalues, regime and PT checks for ``q``; with ``include_metric`` also
    the nine entries of eta and its orthonormality deviation.

    Raises:
        ExceptionalPointError: If the metric is requested at the exceptional point.
    """
    data = spectral.spectral_data(q, ep_tol)
    h = hamiltonian.build_pt_hamiltonian(q)
    p = hamiltonian.parity_operator()
    parity_deviation = linalg3.max_entry(p @ h @ p - linalg3.adjoint(h))
    row: Row = {
        "gamma_pt": q.gamma_pt,
        "v": q.v,
        "hbar": q.hbar,
        "regime": data.regime.tag.value,
        "discriminant": data.regime.discriminant,
        **_complex_cells("e0", data.e0),
        **_complex_cells("e_plus", data.e_plus),
        **_complex_cells("e_minus", data.e_minus),
        "pt_commutator": hamiltonian.pt_commutator_norm(h),
        "parity_pseudo_hermitian": parity_deviation <= METRIC_CHECK_TOL * q.scale,
    }
    if not include_metric:
        return row
    if data.regime.is_exceptional_point:
        raise ExceptionalPointError(
            f"gamma_pt={q.gamma_pt}, v={q.v} is an exceptional point: H is not "
            "diagonalizable, so no metric eta exists."
        )
    for i in range(3):
        for j in range(3):
            row.update(_complex_cells(f"eta{i + 1}{j + 1}", complex(data.eta[i, j])))
    row["orthonormality_deviation"] = spectral.verify_metric_orthonormality(
        data.eta, data.d_matrix
    )
    row["metric_pseudo_hermitian"] = hamiltonian.is_pseudo_hermitian(
        h, data.eta, METRIC_CHECK_TOL
    )
    return row


def _rate_scale(h: np.ndarray) -> float:
    """Largest entry of H together with its largest eigenvalue magnitude."""
    eigen = np.max(np.abs(np.linalg.eigvals(h)))
    return max(linalg3.max_entry(h), float(eigen))


def integrator_for(cfg: RunConfig, rate_scale: float, hbar: float) -> IntegratorConfig:
    """The configured integrator, or the recommended one for ``grid.t_end``."""
    if cfg.integrator is not None:
        return cfg.integrator
    integrator = IntegratorConfig.recommended(rate_scale, cfg.grid.t_end, hbar)
    logger.debug(f"Auto-selected dt={integrator.dt:.6g} ({integrator.n_steps} steps)")
    return integrator


def _effective_trajectory(
    cfg: RunConfig, q: Optional[PtParams], eff: Optional[EffectiveParams]
) -> Trajectory:
    b0 = cfg.initial.vector()
    if cfg.method == "analytic":
        times = cfg.grid.times()
        if q is not None:
            return evolve.evolve_b(q, b0, times)
        return evolve.evolve_effective(eff, b0, times)

    if q is not None:
        h, hbar = hamiltonian.build_pt_hamiltonian(q), q.hbar
    else:
        h, hbar = build_effective_hamiltonian(eff), eff.hbar
    integrator = integrator_for(cfg, _rate_scale(h), hbar)
    if q is not None:
        return oracle.rk4_effective(q, b0, integrator)
    times, states = oracle.rk4_constant(h, b0, integrator, hbar)
    return Trajectory(
        times=times, amplitudes=states, frame=Frame.EFFECTIVE_B, params_snapshot=eff
    )


def _lab_trajectory(cfg: RunConfig, effective: Trajectory, p: SystemParams) -> Trajectory:
    if cfg.method == "analytic":
        return evolve.to_lab_frame(effective, p)
    h_eff = build_effective_hamiltonian(p.effective())
    rate = max(oracle.lab_rate_scale(p), _rate_scale(h_eff))
    return oracle.rk4_lab(p, cfg.initial.vector(), integrator_for(cfg, rate, p.hbar))


def run_evolution(cfg: RunConfig) -> List[Trajectory]:
    """
    The effective-frame trajectory, followed by the lab-frame one when system
    parameters are supplied, resonance holds and ``include_lab`` is set.

    Raises:
        ConfigError: If no physical parameters are given.
        InvalidParams: If the system parameters do not reduce to the effective frame.
        StepOverflow: If the RK4 method runs away.
    """
    q, eff = resolve_params(cfg)
    effective = _effective_trajectory(cfg, q, eff)
    trajectories = [effective]

    p = cfg.system
    if p is not None and cfg.include_lab:
        if p.resonance_holds:
            trajectories.append(_lab_trajectory(cfg, effective, p))
        else:
            logger.warning("Skipping lab-frame output: the frame map needs omega23 = omega_c.")
    logger.info(f"Evolved {len(trajectories)} trajectory(ies) with method={cfg.method}")
    return trajectories


def sweep_point(sweep: SweepRange, value: float, ep_tol: Optional[float] = None) -> Row:
    """E+ and regime at one grid value. v = 0 is allowed here."""
    if sweep.parameter == "v":
        gamma_pt, v = sweep.fixed, value
    else:
        gamma_pt, v = value, sweep.fixed
    e = spectral.energy(gamma_pt, v)
    regime = spectral.classify_discriminant(gamma_pt, v, ep_tol)
    return {
        sweep.parameter: value,
        "re_e_plus": e.real,
        "im_e_plus": e.imag,
        "regime": regime.tag.value,
    }


def run_sweep(sweep: SweepRange, ep_tol: Optional[float] = None) -> List[Row]:
    """One row per grid value, computed concurrently and returned in grid order."""
    values = sweep.values()
    with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
        rows = list(pool.map(lambda x: sweep_point(sweep, x, ep_tol), values))
    logger.info(f"Swept {sweep.parameter} over {len(rows)} points")
    return rows


def sweep_columns(sweep: SweepRange) -> List[str]:
    return [sweep.parameter, *SWEEP_VALUE_COLUMNS]


def threshold_crossing(rows: List[Row], parameter: str) -> Optional[float]:
    """First grid value where the regime changes between neighbours, if any."""
    for prev, cur in zip(rows, rows[1:]):
        if prev["regime"] != cur["regime"]:
            return float(cur[parameter])
    return None
