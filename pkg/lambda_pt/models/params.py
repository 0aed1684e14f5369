import logging

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.alias_generators import to_camel

from lambda_pt.core.exceptions import DegenerateCoupling, InvalidParams

logger = logging.getLogger(__name__)

LAMBDA_REDUCTION_TOL = 1e-12
RESONANCE_TOL = 1e-12
PT_CONDITION_TOL = 1e-12


class SystemParams(BaseModel):
    """
    Physical inputs of the three-level Lambda atom in the lab frame.

    Decay rates are in energy units (inverse time when hbar = 1), level and
    field frequencies in rad/time, couplings in energy. Couplings are real.
    """

    gamma1: float = Field(ge=0, description="Decay rate of level |1>.")
    gamma2: float = Field(ge=0, description="Decay rate of level |2>.")
    gamma3: float = Field(ge=0, description="Decay rate of level |3>.")
    omega1: float = 0.0
    omega2: float = 0.0
    omega3: float = 0.0
    omega_p: float = Field(default=0.0, description="Pump field frequency.")
    omega_c: float = Field(default=0.0, description="Coupling field frequency.")
    v_p: float = Field(description="Pump coupling V21^p.")
    v_c: float = Field(description="Coupling-field coupling V23^c.")
    hbar: float = Field(default=1.0, gt=0)

    model_config = ConfigDict(
        alias_generator=to_camel,
        populate_by_name=True,
        frozen=True,
        extra="forbid",
        allow_inf_nan=False,
    )

    @property
    def lambda_reduction_holds(self) -> bool:
        """gamma2 equals the mean of the outer decay rates."""
        limit = LAMBDA_REDUCTION_TOL * max(self.gamma1, self.gamma3, 1.0)
        return abs(self.gamma2 - (self.gamma1 + self.gamma3) / 2) <= limit

    @property
    def resonance_holds(self) -> bool:
        """The coupling field sits exactly on the |2>-|3> transition."""
        omega23 = self.omega2 - self.omega3
        return abs(omega23 - self.omega_c) <= RESONANCE_TOL * max(abs(omega23), 1.0)

    @property
    def detuning(self) -> float:
        """Pump detuning omega21 - omega_p."""
        return (self.omega2 - self.omega1) - self.omega_p

    def require_lambda_reduction(self) -> None:
        if not self.lambda_reduction_holds:
            raise InvalidParams(
                f"gamma2={self.gamma2} must equal (gamma1 + gamma3)/2="
                f"{(self.gamma1 + self.gamma3) / 2} for the effective-frame reduction."
            )

    def effective(self, impose_resonance: bool = False) -> "EffectiveParams":
        return EffectiveParams.from_system(self, impose_resonance=impose_resonance)


class EffectiveParams(BaseModel):
    """
    Parameters of the time-independent effective-frame Hamiltonian.

    ``delta`` stores the energy hbar*Delta. Built from SystemParams through
    ``from_system`` so that gamma_pt always derives from the decay rates.
    """

    gamma_pt: float
    delta: float = 0.0
    v_p: float
    v_c: float
    hbar: float = Field(default=1.0, gt=0)
    resonance_imposed: bool = Field(
        default=False,
        description="True when omega23 != omega_c and resonance was assumed anyway.",
    )

    model_config = ConfigDict(
        alias_generator=to_camel,
        populate_by_name=True,
        frozen=True,
        extra="forbid",
        allow_inf_nan=False,
    )

    @classmethod
    def from_system(cls, p: SystemParams, impose_resonance: bool = False) -> "EffectiveParams":
        """
        Raises:
            InvalidParams: If gamma2 is not the mean of gamma1 and gamma3, or the
                           coupling field is off resonance and resonance is not imposed.
        """
        p.require_lambda_reduction()
        resonant = p.resonance_holds
        if not resonant and not impose_resonance:
            raise InvalidParams(
                f"omega23={p.omega2 - p.omega3} differs from omega_c={p.omega_c}; "
                "pass impose_resonance=True to assume resonance."
            )
        if not resonant:
            logger.warning("Coupling field is off resonance; imposing omega23 = omega_c.")
        return cls(
            gamma_pt=(p.gamma1 - p.gamma3) / 2,
            delta=p.hbar * p.detuning,
            v_p=p.v_p,
            v_c=p.v_c,
            hbar=p.hbar,
            resonance_imposed=not resonant,
        )

    @property
    def is_pt_symmetric(self) -> bool:
        """Delta = 0 and V21^p = V23^c."""
        scale = max(abs(self.v_p), abs(self.v_c), abs(self.gamma_pt), 1e-300)
        return (
            abs(self.delta) <= PT_CONDITION_TOL * scale
            and abs(self.v_p - self.v_c) <= PT_CONDITION_TOL * scale
        )

    def to_pt(self) -> "PtParams":
        """
        Raises:
            InvalidParams: If Delta != 0 or V21^p != V23^c.
        """
        if not self.is_pt_symmetric:
            raise InvalidParams(
                f"PT conditions fail: delta={self.delta}, v_p={self.v_p}, v_c={self.v_c}."
            )
        return PtParams(gamma_pt=self.gamma_pt, v=self.v_p, hbar=self.hbar)


class PtParams(BaseModel):
    """The two free parameters of the PT-symmetric Hamiltonian, plus hbar."""

    gamma_pt: float
    v: float = Field(description="Common coupling V21^p = V23^c.")
    hbar: float = Field(default=1.0, gt=0)

    model_config = ConfigDict(
        alias_generator=to_camel,
        populate_by_name=True,
        frozen=True,
        extra="forbid",
        allow_inf_nan=False,
    )

    @model_validator(mode="after")
    def _check_coupling(self) -> "PtParams":
        if self.v == 0:
            raise DegenerateCoupling("Zero coupling leaves a diagonal, decoupled system.")
        if self.v < 0:
            raise ValueError("Coupling v must be positive.")
        return self

    @property
    def discriminant(self) -> float:
        """2 v^2 - gamma_pt^2, in energy squared."""
        return 2 * self.v**2 - self.gamma_pt**2

    @property
    def scale(self) -> float:
        return max(abs(self.gamma_pt), self.v)
