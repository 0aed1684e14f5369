import logging

from fastapi import APIRouter, status

from lambda_pt.models.params import PtParams
from lambda_pt.schemas.spectrum import ComplexValue, SpectrumRequest, SpectrumResponse
from lambda_pt.services import simulation

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post(
    "/",
    response_model=SpectrumResponse,
    status_code=status.HTTP_200_OK,
    summary="Spectrum and Metric",
    description="Eigenvalues, PT regime, PT checks and (optionally) the metric eta.",
)
def get_spectrum(payload: SpectrumRequest):
    q = PtParams(gamma_pt=payload.gamma_pt, v=payload.v, hbar=payload.hbar)
    row = simulation.spectrum_row(q, payload.include_metric, payload.ep_tol)
    logger.info(f"Spectrum for gamma_pt={q.gamma_pt}, v={q.v}: {row['regime']}")

    response = SpectrumResponse(
        regime=row["regime"],
        discriminant=row["discriminant"],
        e0=ComplexValue(re=row["re_e0"], im=row["im_e0"]),
        e_plus=ComplexValue(re=row["re_e_plus"], im=row["im_e_plus"]),
        e_minus=ComplexValue(re=row["re_e_minus"], im=row["im_e_minus"]),
        pt_commutator=row["pt_commutator"],
        parity_pseudo_hermitian=row["parity_pseudo_hermitian"],
    )
    if not payload.include_metric:
        return response

    eta = [
        [ComplexValue(re=row[f"re_eta{i}{j}"], im=row[f"im_eta{i}{j}"]) for j in range(1, 4)]
        for i in range(1, 4)
    ]
    return response.model_copy(
        update={
            "eta": eta,
            "orthonormality_deviation": row["orthonormality_deviation"],
            "metric_pseudo_hermitian": row["metric_pseudo_hermitian"],
        }
    )
