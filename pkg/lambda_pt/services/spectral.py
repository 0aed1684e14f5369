"""
Closed-form eigen-system of the PT Hamiltonian, the similarity matrix, the
metric eta = (D D^dagger)^-1 and PT-phase classification.
"""

import logging
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from lambda_pt.core.config import settings
from lambda_pt.core.exceptions import ExceptionalPointError
from lambda_pt.models.params import PtParams
from lambda_pt.models.spectral import Regime, RegimeTag, SpectralData
from lambda_pt.services import linalg3
from lambda_pt.services.linalg3 import CMat3, CVec3

logger = logging.getLogger(__name__)


def energy(gamma_pt: float, v: float) -> complex:
    """
    E = sqrt(2 v^2 - gamma_pt^2) on the principal branch.

    Below threshold this is i * sqrt(gamma_pt^2 - 2 v^2), so E carries a
    positive imaginary part. Accepts v = 0, which PtParams rejects.
    """
    return complex(np.sqrt(complex(2 * v**2 - gamma_pt**2, 0.0)))


def classify_discriminant(gamma_pt: float, v: float, ep_tol: Optional[float] = None) -> Regime:
    """``ep_tol`` is relative: the band is ep_tol * max(v^2, gamma_pt^2)."""
    ep_tol = settings.EP_TOL if ep_tol is None else ep_tol
    if ep_tol <= 0:
        raise ValueError("ep_tol must be positive.")
    disc = 2 * v**2 - gamma_pt**2
    band = ep_tol * max(v**2, gamma_pt**2)
    if disc > band:
        tag = RegimeTag.UNBROKEN
    elif disc < -band:
        tag = RegimeTag.BROKEN
    else:
        tag = RegimeTag.EXCEPTIONAL_POINT
    return Regime(tag=tag, discriminant=disc)


def classify_regime(q: PtParams, ep_tol: Optional[float] = None) -> Regime:
    return classify_discriminant(q.gamma_pt, q.v, ep_tol)


def eigenvalues(q: PtParams) -> Tuple[complex, complex, complex]:
    """Returns (E0, E+, E-) = (0, E, -E)."""
    e = energy(q.gamma_pt, q.v)
    return 0j, e, -e


def _require_diagonalizable(q: PtParams, ep_tol: Optional[float]) -> complex:
    regime = classify_regime(q, ep_tol)
    e = energy(q.gamma_pt, q.v)
    if regime.is_exceptional_point or e == 0:
        raise ExceptionalPointError(
            f"Exceptional point: 2v^2 - gamma_pt^2 = {regime.discriminant:.3e}; "
            "eigenvectors coalesce and H is not diagonalizable."
        )
    return e


def eigenvectors(q: PtParams, ep_tol: Optional[float] = None) -> Tuple[CVec3, CVec3, CVec3]:
    """
    Eigenvectors for (E, -E, 0), normalized with the explicit 1/E factor
    rather than to unit length.

    Raises:
        ExceptionalPointError: At the exceptional point.
    """
    e = _require_diagonalizable(q, ep_tol)
    g, v = q.gamma_pt, q.v
    phi1 = np.array([(e - 1j * g) ** 2 / (2 * v), e - 1j * g, v], dtype=np.complex128) / e
    phi2 = np.array([(e + 1j * g) ** 2 / (2 * v), -(e + 1j * g), v], dtype=np.complex128) / e
    phi3 = np.array([-v, -1j * g, v], dtype=np.complex128) / e
    return phi1, phi2, phi3


def similarity_matrix(q: PtParams, ep_tol: Optional[float] = None) -> CMat3:
    """D with columns (phi1 | phi2 | phi3), so D^-1 H D = diag(E, -E, 0)."""
    return np.column_stack(eigenvectors(q, ep_tol))


def metric(d: CMat3) -> CMat3:
    """
    eta = (D D^dagger)^-1.

    Raises:
        SingularMatrix: If D D^dagger cannot be inverted.
    """
    d = linalg3.as_cmat3(d)
    return linalg3.inverse(d @ linalg3.adjoint(d))


def verify_metric_orthonormality(eta: CMat3, d: CMat3) -> float:
    """max-entry |D^dagger eta D - I|."""
    d = linalg3.as_cmat3(d)
    gram = linalg3.adjoint(d) @ linalg3.as_cmat3(eta) @ d
    return linalg3.max_entry(gram - linalg3.identity())


@lru_cache(maxsize=256)
def spectral_data(q: PtParams, ep_tol: Optional[float] = None) -> SpectralData:
    """
    Bundles eigenvalues, eigenvectors, D and eta for ``q``.

    At the exceptional point only the eigenvalues and the regime are filled in.
    """
    regime = classify_regime(q, ep_tol)
    e0, e_plus, e_minus = eigenvalues(q)
    logger.info(f"gamma_pt={q.gamma_pt}, v={q.v}: {regime.tag.value} (E={e_plus})")
    if regime.is_exceptional_point:
        return SpectralData(e0=e0, e_plus=e_plus, e_minus=e_minus, regime=regime)

    vecs = eigenvectors(q, ep_tol)
    d = np.column_stack(vecs)
    eta = metric(d)
    # Shared through the cache, so hand out read-only arrays.
    for arr in (*vecs, d, eta):
        arr.setflags(write=False)
    return SpectralData(
        e0=e0,
        e_plus=e_plus,
        e_minus=e_minus,
        eigvecs=vecs,
        d_matrix=d,
        eta=eta,
        regime=regime,
    )
