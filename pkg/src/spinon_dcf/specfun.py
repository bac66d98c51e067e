"""Special functions and adaptive quadrature used throughout the package.

Everything here is a pure function; no global mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.integrate
import scipy.special


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and segmentation controls for the quadrature engine."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    split_point: float = 40.0
    max_subdivisions: int = 60

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if not self.split_point > 0:
            raise ValueError("split_point must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class EllipticPair:
    """Complete elliptic integrals K(m) and K'(m) for a modulus parameter m."""

    m: float
    K: float
    Kprime: float

    @property
    def nome(self) -> float:
        return math.exp(-math.pi * self.Kprime / self.K)


# Lanczos approximation, g = 7, 9 terms; accurate to ~15 significant digits
# for real arguments.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function for positive real argument (Lanczos approximation)."""
    if not x > 0:
        raise ValueError(f"gamma_fn requires x > 0, got {x}")
    if x < 0.5:
        # reflection formula keeps the series argument in its sweet spot
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    a = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        a += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * a


def q_pochhammer(y: complex, x: complex, return_count: bool = False):
    """Infinite product prod_{n>=0} (1 - y x^n), truncated at machine level.

    Requires |x| < 1.  With ``return_count`` the truncation index is
    returned alongside the value.
    """
    if abs(x) >= 1:
        raise ValueError(f"q_pochhammer diverges for |x| >= 1, got |x| = {abs(x)}")
    prod = complex(1.0)
    term = complex(y)
    n = 0
    # stop once the running factor 1 - y x^n is within eps of 1
    while abs(term) > 1e-17 and n < 100000:
        prod *= 1.0 - term
        term *= x
        n += 1
    if abs(y) > 0:
        prod *= 1.0 - term  # last factor, below tolerance
        n += 1
    if return_count:
        return prod, n
    return prod


def theta_fn(x: complex, y: complex) -> complex:
    """Theta function theta_x(y) = (x;x)_inf (y;x)_inf (x/y;x)_inf."""
    if y == 0:
        raise ValueError("theta_fn requires y != 0")
    return q_pochhammer(x, x) * q_pochhammer(y, x) * q_pochhammer(x / y, x)


def elliptic_complete(m: float) -> EllipticPair:
    """Complete elliptic integrals K(m), K'(m) = K(1-m) by the AGM."""
    if not 0.0 < m < 1.0:
        raise ValueError(f"elliptic_complete requires 0 < m < 1, got {m}")
    return EllipticPair(m=m, K=_agm_K(m), Kprime=_agm_K(1.0 - m))


def _agm_K(m: float) -> float:
    a, b = 1.0, math.sqrt(1.0 - m)
    gap = a - b
    while gap > 1e-16 * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        new_gap = abs(a - b)
        if new_gap >= gap:
            break  # stalled at the last ulp
        gap = new_gap
    return math.pi / (2.0 * a)


def jacobi_am(u: float, m: float) -> float:
    """Jacobi amplitude am(u|m)."""
    if not 0.0 < m < 1.0:
        raise ValueError(f"jacobi_am requires 0 < m < 1, got {m}")
    _, _, _, ph = scipy.special.ellipj(u, m)
    return float(ph)


def jacobi_dn(u: float, m: float) -> float:
    """Jacobi delta function dn(u|m), in [sqrt(1-m), 1]."""
    if not 0.0 < m < 1.0:
        raise ValueError(f"jacobi_dn requires 0 < m < 1, got {m}")
    _, _, dn, _ = scipy.special.ellipj(u, m)
    return float(dn)


def cosine_integral(z: float) -> float:
    """Cosine integral Ci(z) = -int_z^inf cos(t)/t dt for z > 0."""
    if not z > 0:
        raise ValueError(f"cosine_integral requires z > 0, got {z}")
    _, ci = scipy.special.sici(z)
    return float(ci)


def integrate_adaptive(f, a: float, b: float, spec: QuadratureSpec = QuadratureSpec()):
    """Adaptive quadrature of f on (a, b).

    Returns ``(value, error_estimate)``; raises :class:`QuadratureError`
    if the estimate cannot be brought below
    ``max(abs_tol, rel_tol * |value|)`` within ``max_subdivisions``.
    """
    if not a < b:
        raise ValueError("integrate_adaptive requires a < b")
    out = scipy.integrate.quad(
        f, a, b,
        epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, full_output=True,
    )
    value, err = out[0], out[1]
    if len(out) > 3 or err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError(
            f"quadrature did not converge on ({a}, {b}): "
            f"estimate {value}, error {err}"
        )
    return value, err
