import math

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel

RECOMMENDED_PHASE_STEP = 0.01


class IntegratorConfig(BaseModel):
    """Fixed-step RK4 settings."""

    dt: float = Field(gt=0, description="Time step.")
    t_end: float = Field(gt=0, description="Final integration time.")
    record_stride: int = Field(default=1, ge=1, description="Store every k-th step.")

    model_config = ConfigDict(
        alias_generator=to_camel,
        populate_by_name=True,
        frozen=True,
        extra="forbid",
        allow_inf_nan=False,
    )

    @model_validator(mode="after")
    def _check_step(self) -> "IntegratorConfig":
        if self.dt > self.t_end:
            raise ValueError(f"dt={self.dt} exceeds t_end={self.t_end}.")
        return self

    @property
    def n_steps(self) -> int:
        return max(1, math.ceil(self.t_end / self.dt - 1e-9))

    @property
    def step(self) -> float:
        """Step actually taken, adjusted so the last step lands on t_end."""
        return self.t_end / self.n_steps

    @classmethod
    def recommended(
        cls, rate_scale: float, t_end: float, hbar: float = 1.0, record_stride: int = 1
    ) -> "IntegratorConfig":
        """
        Picks dt so that dt * rate_scale / hbar <= 0.01, where ``rate_scale``
        is the largest of |E|, gamma2 and the frequency scale (in energy units).
        """
        if rate_scale <= 0:
            dt = t_end / 1000
        else:
            dt = min(t_end, RECOMMENDED_PHASE_STEP * hbar / rate_scale)
        return cls(dt=dt, t_end=t_end, record_stride=record_stride)
