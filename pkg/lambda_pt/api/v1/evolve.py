import logging

from fastapi import APIRouter, status

from lambda_pt.schemas.evolve import EvolveRequest, EvolveResponse, TrajectoryRow
from lambda_pt.services import reporting, simulation

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/",
    response_model=EvolveResponse,
    status_code=status.HTTP_200_OK,
    summary="Time Evolution",
    description="Effective-frame rows first, then lab-frame rows when system parameters allow it.",
)
def evolve(payload: EvolveRequest):
    trajectories = simulation.run_evolution(payload.to_run_config())
    rows = [
        TrajectoryRow(**row)
        for traj in trajectories
        for row in reporting.trajectory_rows(traj)
    ]
    logger.info(f"Returning {len(rows)} rows from {len(trajectories)} trajectory(ies).")
    return EvolveResponse(rows=rows)
