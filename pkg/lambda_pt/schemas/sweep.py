from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field
from pydantic.alias_generators import to_camel

from lambda_pt.schemas.run_config import SweepRange


class SweepRequest(BaseModel):
    sweep: SweepRange
    ep_tol: Optional[float] = Field(default=None, gt=0)

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra="forbid")


class SweepPoint(BaseModel):
    """E+ at one value of the swept parameter."""

    value: float
    re_e_plus: float
    im_e_plus: float
    regime: str

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class SweepResponse(BaseModel):
    parameter: str
    points: List[SweepPoint]
    threshold_crossing: Optional[float] = Field(
        default=None, description="First grid value where the regime changes."
    )

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)
