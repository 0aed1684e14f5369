import math

import numpy as np
import pytest

from lambda_pt.models.params import PtParams, SystemParams
from lambda_pt.services import spectral

FIG2A_ENERGY = math.sqrt(2 * 0.025**2 - 0.0005**2)
FIG2B_ENERGY = math.sqrt(2 * 0.25**2 - 0.005**2)
BROKEN_OMEGA = math.sqrt(0.0023)


@pytest.fixture(autouse=True)
def clear_spectral_cache():
    spectral.spectral_data.cache_clear()
    yield
    spectral.spectral_data.cache_clear()


@pytest.fixture
def ground():
    return np.array([1, 0, 0], dtype=np.complex128)


@pytest.fixture
def fig2a_system():
    return SystemParams(gamma1=0.002, gamma2=0.0015, gamma3=0.001, v_p=0.025, v_c=0.025)


@pytest.fixture
def fig2b_system():
    return SystemParams(gamma1=0.02, gamma2=0.015, gamma3=0.01, v_p=0.25, v_c=0.25)


@pytest.fixture
def fig2a_pt():
    return PtParams(gamma_pt=0.0005, v=0.025)


@pytest.fixture
def fig2b_pt():
    return PtParams(gamma_pt=0.005, v=0.25)


@pytest.fixture
def broken_pt():
    return PtParams(gamma_pt=0.05, v=0.01)


@pytest.fixture
def ep_pt():
    return PtParams(gamma_pt=0.01 * math.sqrt(2), v=0.01)


@pytest.fixture
def resonant_system():
    """Nonzero optical frequencies with Delta = 0 and omega23 = omega_c."""
    return SystemParams(
        gamma1=0.002,
        gamma2=0.0015,
        gamma3=0.001,
        omega1=0.0,
        omega2=0.5,
        omega3=0.1,
        omega_p=0.5,
        omega_c=0.4,
        v_p=0.025,
        v_c=0.025,
    )
