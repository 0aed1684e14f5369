import enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer


class RegimeTag(str, enum.Enum):
    """PT phase of the Hamiltonian."""

    UNBROKEN = "Unbroken"
    BROKEN = "Broken"
    EXCEPTIONAL_POINT = "ExceptionalPoint"


class Regime(BaseModel):
    """Phase tag together with the discriminant 2 v^2 - gamma_pt^2 it was read from."""

    tag: RegimeTag
    discriminant: float

    model_config = ConfigDict(frozen=True)

    @field_serializer("tag")
    def serialize_tag(self, tag: RegimeTag, _info):
        return tag.value

    @property
    def is_exceptional_point(self) -> bool:
        return self.tag == RegimeTag.EXCEPTIONAL_POINT


class SpectralData(BaseModel):
    """
    Eigen-system of the PT Hamiltonian.

    Eigenvalues are ordered (E, -E, 0) to match the columns of ``d_matrix``.
    ``eigvecs``, ``d_matrix`` and ``eta`` are None at an exceptional point.
    """

    e0: complex = 0j
    e_plus: complex
    e_minus: complex
    eigvecs: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None
    d_matrix: Optional[np.ndarray] = None
    eta: Optional[np.ndarray] = None
    regime: Regime

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def energy(self) -> complex:
        return self.e_plus
