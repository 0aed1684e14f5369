"""
Fixed-size complex linear algebra for 3-vectors and 3x3 matrices.

Matrices and vectors are numpy ``complex128`` arrays of shape (3, 3) and (3,).
Inversion uses the adjugate closed form so results are auditable entry by
entry; the cubic solver is the independent eigenvalue oracle.
"""

import logging
from typing import Tuple

import numpy as np
import numpy.typing as npt

from lambda_pt.core.config import settings
from lambda_pt.core.exceptions import NoConvergence, NotHermitian, SingularMatrix

logger = logging.getLogger(__name__)

CMat3 = npt.NDArray[np.complex128]
CVec3 = npt.NDArray[np.complex128]

CUBIC_RESIDUAL_TOL = 1e-10
CUBIC_ROUNDING_FACTOR = 16
EPS = float(np.finfo(np.float64).eps)
NEWTON_STEPS = 2


def as_cmat3(a) -> CMat3:
    """Coerces ``a`` to a finite 3x3 complex matrix."""
    m = np.asarray(a, dtype=np.complex128)
    if m.shape != (3, 3):
        raise ValueError(f"Expected a 3x3 matrix, got shape {m.shape}.")
    if not np.all(np.isfinite(m)):
        raise ValueError("Matrix has non-finite entries.")
    return m


def as_cvec3(v) -> CVec3:
    """Coerces ``v`` to a finite complex 3-vector."""
    x = np.asarray(v, dtype=np.complex128)
    if x.shape != (3,):
        raise ValueError(f"Expected a 3-vector, got shape {x.shape}.")
    if not np.all(np.isfinite(x)):
        raise ValueError("Vector has non-finite components.")
    return x


def identity() -> CMat3:
    return np.eye(3, dtype=np.complex128)


def max_entry(a) -> float:
    return float(np.max(np.abs(a)))


def mat_mul(a: CMat3, b: CMat3) -> CMat3:
    return as_cmat3(a) @ as_cmat3(b)


def adjoint(a: CMat3) -> CMat3:
    return as_cmat3(a).conj().T


def det(a: CMat3) -> complex:
    """Cofactor expansion along the first row."""
    m = as_cmat3(a)
    return complex(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def adjugate(a: CMat3) -> CMat3:
    m = as_cmat3(a)
    adj = np.empty((3, 3), dtype=np.complex128)
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != j]
            cols = [c for c in range(3) if c != i]
            (r0, r1), (c0, c1) = rows, cols
            minor = m[r0, c0] * m[r1, c1] - m[r0, c1] * m[r1, c0]
            adj[i, j] = minor if (i + j) % 2 == 0 else -minor
    return adj


def inverse(a: CMat3) -> CMat3:
    """
    Inverts a 3x3 matrix through its adjugate.

    Raises:
        SingularMatrix: If |det(a)| <= SINGULAR_TOL * (max-entry)^3. The cutoff is
                        scale-invariant; an exceptional point makes the
                        similarity matrix genuinely singular.
    """
    m = as_cmat3(a)
    d = det(m)
    scale = max_entry(m)
    if scale == 0.0 or abs(d) <= settings.SINGULAR_TOL * scale**3:
        raise SingularMatrix(
            f"Matrix is singular: |det|={abs(d):.3e}, max entry={scale:.3e}."
        )
    return adjugate(m) / d


def is_hermitian(a: CMat3, tol: float) -> bool:
    m = as_cmat3(a)
    return max_entry(m - m.conj().T) <= tol


def leading_minors(a: CMat3) -> Tuple[complex, complex, complex]:
    m = as_cmat3(a)
    return (
        complex(m[0, 0]),
        complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]),
        det(m),
    )


def is_positive_definite(a: CMat3, tol: float) -> bool:
    """
    Sylvester's criterion on the three leading principal minors.

    Raises:
        NotHermitian: If ``a`` fails the Hermiticity precheck at ``tol``.
    """
    if not is_hermitian(a, tol):
        raise NotHermitian("Positive definiteness is only defined here for Hermitian input.")
    return all(minor.real > tol for minor in leading_minors(a))


def _cubic(c2: complex, c1: complex, c0: complex, x: complex) -> complex:
    return ((x + c2) * x + c1) * x + c0


def _cubic_prime(c2: complex, c1: complex, x: complex) -> complex:
    return (3 * x + 2 * c2) * x + c1


def _cardano(c2: complex, c1: complex, c0: complex) -> Tuple[complex, complex, complex]:
    shift = c2 / 3
    p = c1 - c2 * c2 / 3
    q = 2 * c2**3 / 27 - c2 * c1 / 3 + c0

    root_disc = np.sqrt(complex((q / 2) ** 2 + (p / 3) ** 3))
    # Larger |u^3| branch avoids cancellation.
    u3_plus = -q / 2 + root_disc
    u3_minus = -q / 2 - root_disc
    u3 = u3_plus if abs(u3_plus) >= abs(u3_minus) else u3_minus

    if u3 == 0:
        return (-shift, -shift, -shift)

    u = complex(u3) ** (1.0 / 3.0)
    omega = complex(-0.5, np.sqrt(3.0) / 2)
    roots = []
    for k in range(3):
        uk = u * omega**k
        roots.append(uk - p / (3 * uk) - shift)
    return tuple(roots)


def _polish(c2: complex, c1: complex, c0: complex, x: complex) -> complex:
    for _ in range(NEWTON_STEPS):
        fx = _cubic(c2, c1, c0, x)
        dfx = _cubic_prime(c2, c1, x)
        if dfx == 0:
            break
        candidate = x - fx / dfx
        # Keep the step only if it does not make the residual worse.
        if abs(_cubic(c2, c1, c0, candidate)) <= abs(fx):
            x = candidate
    return x


def _rounding_floor(c2: complex, c1: complex, c0: complex, x: complex) -> float:
    """Roundoff of a Horner evaluation at x, summed over the monomials."""
    ax = abs(x)
    terms = ax**3 + abs(c2) * ax**2 + abs(c1) * ax + abs(c0)
    return CUBIC_ROUNDING_FACTOR * EPS * terms


def cubic_roots(c2: complex, c1: complex, c0: complex) -> Tuple[complex, complex, complex]:
    """
    Solves x^3 + c2 x^2 + c1 x + c0 = 0.

    Cardano's closed form gives the starting roots; each is then refined by
    Newton steps, since Cardano alone loses digits near repeated roots.

    Raises:
        NoConvergence: If a root is not finite or its residual exceeds
                       1e-10 * max(1, |c0|, |c1|, |c2|) plus the roundoff of
                       evaluating the cubic at that root. The roundoff term
                       grows like |x|^3, so large roots (around 1e3 and up)
                       would otherwise fail on rounding alone.
    """
    c2, c1, c0 = complex(c2), complex(c1), complex(c0)
    if not all(np.isfinite(c) for c in (c2, c1, c0)):
        raise NoConvergence("Cubic coefficients must be finite.")

    roots = tuple(_polish(c2, c1, c0, r) for r in _cardano(c2, c1, c0))

    scale = CUBIC_RESIDUAL_TOL * max(1.0, abs(c0), abs(c1), abs(c2))
    for r in roots:
        residual = abs(_cubic(c2, c1, c0, r))
        limit = scale + _rounding_floor(c2, c1, c0, r)
        if not np.isfinite(residual) or residual > limit:
            logger.error(
                f"Cubic root {r} did not converge: residual {residual:.3e} > {limit:.3e}"
            )
            raise NoConvergence(f"Root polishing failed (residual {residual:.3e}).")
    return roots
