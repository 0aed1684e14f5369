import enum
from typing import Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from lambda_pt.models.params import EffectiveParams, PtParams, SystemParams


class Frame(str, enum.Enum):
    """Which amplitudes a trajectory stores."""

    EFFECTIVE_B = "EffectiveB"
    LAB_C = "LabC"


class Trajectory(BaseModel):
    """
    Amplitude triples sampled on a strictly increasing time grid.

    ``amplitudes`` has shape (len(times), 3). In the EffectiveB frame it holds
    (b1, b2, b3); in the LabC frame the lab amplitudes (C1, C2, C3).
    """

    times: np.ndarray
    amplitudes: np.ndarray
    frame: Frame
    params_snapshot: Union[SystemParams, EffectiveParams, PtParams]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_grid(self) -> "Trajectory":
        if self.times.ndim != 1 or self.times.size == 0:
            raise ValueError("times must be a non-empty 1-D grid.")
        if self.amplitudes.shape != (self.times.size, 3):
            raise ValueError(
                f"amplitudes shape {self.amplitudes.shape} does not match "
                f"{self.times.size} time points."
            )
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing.")
        if not np.all(np.isfinite(self.amplitudes)):
            raise ValueError("amplitudes must be finite at every grid point.")
        return self

    @field_serializer("frame")
    def serialize_frame(self, frame: Frame, _info):
        return frame.value

    def __len__(self) -> int:
        return self.times.size


class ModalCoefficients(BaseModel):
    """Coefficients of the initial state in the eigenbasis (phi1, phi2, phi3)."""

    c1pp: complex
    c2pp: complex
    c3pp: complex

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def as_array(self) -> np.ndarray:
        return np.array([self.c1pp, self.c2pp, self.c3pp], dtype=np.complex128)
