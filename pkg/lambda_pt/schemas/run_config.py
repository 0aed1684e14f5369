from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel

from lambda_pt.models.integrator import IntegratorConfig
from lambda_pt.models.params import PtParams, SystemParams

ComplexPair = Tuple[float, float]


class InitialCondition(BaseModel):
    """Initial amplitudes: the ground level |1>, or three (re, im) pairs."""

    kind: Literal["ground", "custom"] = "ground"
    amplitudes: Optional[Tuple[ComplexPair, ComplexPair, ComplexPair]] = None

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra="forbid")

    @model_validator(mode="after")
    def _check_amplitudes(self) -> "InitialCondition":
        if self.kind == "custom" and self.amplitudes is None:
            raise ValueError("A custom initial condition needs three (re, im) pairs.")
        if self.kind == "ground" and self.amplitudes is not None:
            raise ValueError("Amplitudes are only accepted with kind='custom'.")
        return self

    def vector(self) -> np.ndarray:
        if self.kind == "ground":
            return np.array([1, 0, 0], dtype=np.complex128)
        return np.array([complex(re, im) for re, im in self.amplitudes], dtype=np.complex128)


class TimeGrid(BaseModel):
    """Uniform output grid on [0, t_end]."""

    t_end: float = Field(default=1000.0, gt=0)
    samples: int = Field(default=1001, ge=2)

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra="forbid")

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_end, self.samples)


class SweepRange(BaseModel):
    """Grid over v or gamma_pt with the other parameter held fixed."""

    parameter: Literal["v", "gamma_pt"] = "v"
    start: float
    stop: float
    points: int = Field(ge=2)
    fixed: float = Field(description="Value of the parameter that is not swept.")

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra="forbid")

    @model_validator(mode="after")
    def _check_range(self) -> "SweepRange":
        if self.stop <= self.start:
            raise ValueError(f"stop={self.stop} must exceed start={self.start}.")
        if self.parameter == "gamma_pt" and self.fixed <= 0:
            raise ValueError("The fixed coupling v must be positive.")
        if self.parameter == "v" and self.start < 0:
            raise ValueError("Couplings must be non-negative.")
        return self

    def values(self) -> List[float]:
        return np.linspace(self.start, self.stop, self.points).tolist()


class RunConfig(BaseModel):
    """
    Complete input of one CLI run, loaded from a JSON document.

    Either ``pt`` or ``system`` supplies the physics, never both. With
    ``system`` the effective parameters are derived from the lab-frame inputs
    and lab-frame rows can be produced as well.
    """

    system: Optional[SystemParams] = None
    pt: Optional[PtParams] = None
    integrator: Optional[IntegratorConfig] = None
    grid: TimeGrid = Field(default_factory=TimeGrid)
    initial: InitialCondition = Field(default_factory=InitialCondition)
    sweep: Optional[SweepRange] = None
    method: Literal["analytic", "rk4"] = Field(
        default="analytic", description="Propagator or RK4 oracle for evolve."
    )
    metric: bool = Field(default=True, description="Request eta in the spectrum output.")
    impose_resonance: bool = False
    include_lab: bool = Field(default=True, description="Also emit lab-frame rows when possible.")
    ep_tol: Optional[float] = Field(default=None, gt=0)
    output: Optional[str] = None
    format: Literal["csv", "json"] = "csv"

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra="forbid")

    @model_validator(mode="after")
    def _check_physics(self) -> "RunConfig":
        if self.system is not None and self.pt is not None:
            raise ValueError("Give either 'system' or 'pt', not both.")
        return self
