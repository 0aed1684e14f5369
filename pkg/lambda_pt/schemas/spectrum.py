from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel


class ComplexValue(BaseModel):
    re: float
    im: float


class SpectrumRequest(BaseModel):
    """PT parameters for a spectrum query. v = 0 is rejected as a degenerate coupling."""

    gamma_pt: float
    v: float = Field(ge=0, description="Common coupling; 0 is answered as a degenerate coupling.")
    hbar: float = Field(default=1.0, gt=0)
    include_metric: bool = True
    ep_tol: Optional[float] = Field(default=None, gt=0)

    model_config = ConfigDict(
        alias_generator=to_camel, populate_by_name=True, extra="forbid", allow_inf_nan=False
    )


class SpectrumResponse(BaseModel):
    """
    Eigenvalues (E0, E+, E-), PT regime and checks. ``eta`` is the 3x3 metric
    row by row; it and the metric checks are null when not requested.
    """

    regime: str
    discriminant: float
    e0: ComplexValue
    e_plus: ComplexValue
    e_minus: ComplexValue
    pt_commutator: float
    parity_pseudo_hermitian: bool
    eta: Optional[List[List[ComplexValue]]] = None
    orthonormality_deviation: Optional[float] = None
    metric_pseudo_hermitian: Optional[bool] = None

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)
