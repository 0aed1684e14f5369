"""Population-dynamics presets for the two unbroken-regime reference runs."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict

from lambda_pt.core.config import settings
from lambda_pt.models.params import SystemParams
from lambda_pt.models.trajectory import Trajectory
from lambda_pt.services import analysis, evolve

logger = logging.getLogger(__name__)

FIG2_SAMPLES = 4096


class Fig2Panel(BaseModel):
    """One reference run: lab-frame parameters over a time span; ``name`` is the output stem."""

    name: str
    system: SystemParams
    t_end: float
    samples: int = FIG2_SAMPLES

    model_config = ConfigDict(frozen=True)


# All frequencies zero: Delta = 0 and omega23 = omega_c hold trivially and the
# populations do not depend on them.
FIG2_PANELS: List[Fig2Panel] = [
    Fig2Panel(
        name="fig2a",
        system=SystemParams(gamma1=0.002, gamma2=0.0015, gamma3=0.001, v_p=0.025, v_c=0.025),
        t_end=1500.0,
    ),
    Fig2Panel(
        name="fig2b",
        system=SystemParams(gamma1=0.02, gamma2=0.015, gamma3=0.01, v_p=0.25, v_c=0.25),
        t_end=150.0,
    ),
]


def lab_trajectory(panel: Fig2Panel) -> Trajectory:
    """Ground-start lab-frame trajectory on the panel's uniform grid."""
    q = panel.system.effective().to_pt()
    times = np.linspace(0.0, panel.t_end, panel.samples)
    b = evolve.evolve_b(q, np.array([1, 0, 0], dtype=np.complex128), times)
    return evolve.to_lab_frame(b, panel.system)


def _log_measurements(panel: Fig2Panel, traj: Trajectory) -> None:
    pop3 = evolve.populations(traj)[:, 2]
    try:
        period = analysis.oscillation_period(traj.times, pop3)
        decay = analysis.envelope_decay_rate(traj.times, pop3)
    except ValueError as e:
        logger.warning(f"{panel.name}: could not measure the oscillation ({e})")
        return
    logger.info(f"{panel.name}: period={period:.6g}, envelope decay rate={decay:.6g}")


def run_fig2(panels: List[Fig2Panel] = FIG2_PANELS) -> Dict[str, Trajectory]:
    """Runs the panels concurrently; returns lab-frame trajectories keyed by panel name."""
    with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
        trajectories = list(pool.map(lab_trajectory, panels))
    for panel, traj in zip(panels, trajectories):
        _log_measurements(panel, traj)
    return {panel.name: traj for panel, traj in zip(panels, trajectories)}
