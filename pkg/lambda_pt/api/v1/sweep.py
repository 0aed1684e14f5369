import logging

from fastapi import APIRouter, status

from lambda_pt.schemas.sweep import SweepPoint, SweepRequest, SweepResponse
from lambda_pt.services import simulation

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/",
    response_model=SweepResponse,
    status_code=status.HTTP_200_OK,
    summary="PT-Breaking Sweep",
    description="E+ and regime across a range of v or gamma_pt.",
)
def sweep(payload: SweepRequest):
    parameter = payload.sweep.parameter
    rows = simulation.run_sweep(payload.sweep, payload.ep_tol)
    points = [
        SweepPoint(
            value=row[parameter],
            re_e_plus=row["re_e_plus"],
            im_e_plus=row["im_e_plus"],
            regime=row["regime"],
        )
        for row in rows
    ]
    return SweepResponse(
        parameter=parameter,
        points=points,
        threshold_crossing=simulation.threshold_crossing(rows, parameter),
    )
