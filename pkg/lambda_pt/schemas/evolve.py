from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel

from lambda_pt.models.integrator import IntegratorConfig
from lambda_pt.models.params import PtParams, SystemParams
from lambda_pt.schemas.run_config import InitialCondition, RunConfig, TimeGrid


class EvolveRequest(BaseModel):
    """Same physics sections as a CLI run config, without output options."""

    system: Optional[SystemParams] = None
    pt: Optional[PtParams] = None
    integrator: Optional[IntegratorConfig] = None
    grid: TimeGrid = Field(default_factory=TimeGrid)
    initial: InitialCondition = Field(default_factory=InitialCondition)
    method: Literal["analytic", "rk4"] = "analytic"
    impose_resonance: bool = False
    include_lab: bool = True

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra="forbid")

    @model_validator(mode="after")
    def _check_physics(self) -> "EvolveRequest":
        if self.system is not None and self.pt is not None:
            raise ValueError("Give either 'system' or 'pt', not both.")
        return self

    def to_run_config(self) -> RunConfig:
        return RunConfig(
            system=self.system,
            pt=self.pt,
            integrator=self.integrator,
            grid=self.grid,
            initial=self.initial,
            method=self.method,
            impose_resonance=self.impose_resonance,
            include_lab=self.include_lab,
        )


class TrajectoryRow(BaseModel):
    """b amplitudes in the EffectiveB frame, C amplitudes in the LabC frame."""

    t: float
    re_b1: float
    im_b1: float
    re_b2: float
    im_b2: float
    re_b3: float
    im_b3: float
    pop1: float
    pop2: float
    pop3: float
    frame: str

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class EvolveResponse(BaseModel):
    rows: List[TrajectoryRow]

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)
