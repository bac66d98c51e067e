"""Squared two-spinon form-factor amplitudes |A±(α)|² and the DCF prefactor.

The amplitude is |A±(α)|² = exp(-I±) with

    I± = ∫₀^∞ dx (cosh(2x(1-δ/π)) cos(2xγ/π) - 1) e^(∓x)
                 / (x sinh(2x) cosh(x)),          α = γ + iδ.

For the minus sign at δ = 0 the integral is only conditionally
convergent: its tail approaches 2 cos(2xγ/π)/x, which is summed in
closed form via the cosine integral, leaving an exponentially small
residual that is integrated numerically.
"""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass

import numpy as np
import scipy.special

from .specfun import QuadratureSpec, cosine_integral, gamma_fn, integrate_adaptive

# Beyond this rapidity difference the amplitude is evaluated at the cap;
# callers scanning toward the lower band edge flag the regime instead.
GAMMA_CAP = 50.0

_SERIES_CUTOFF = 1e-3  # below this, the integrand numerator uses its Taylor form


class Convergence(enum.Enum):
    ABSOLUTE = "absolute"
    CONDITIONAL = "conditional"


class BoundaryDivergence(ArithmeticError):
    """|A₋(0)|² limit: the defining integral diverges to +inf (amplitude -> 0)."""


@dataclass(frozen=True)
class FormFactorArg:
    """Complex argument α = γ + iδ of the squared amplitude."""

    gamma: float
    delta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.delta <= math.pi:
            raise ValueError(f"delta must lie in [0, pi], got {self.delta}")

    def convergence(self, sign: str) -> Convergence:
        if sign == "minus" and self.delta == 0.0:
            return Convergence.CONDITIONAL
        return Convergence.ABSOLUTE


@dataclass(frozen=True)
class DcfConstants:
    """Assembled constant prefactor of the exact two-spinon DCF formula."""

    gamma_ratio: float          # (Γ(3/4)/Γ(1/4))²
    a_plus_sq_half: float       # |A₊(iπ/2)|²
    a_minus_sq_half: float      # |A₋(iπ/2)|²
    prefactor: float
    quad_error: float           # conservative bound from the two quadratures


def _integrand(x: float, s: float, a: float, b: float) -> float:
    # s = +1 / -1 selects e^(-x) / e^(+x); a = 2(1 - delta/pi), b = 2 gamma/pi
    if x < _SERIES_CUTOFF:
        a2, b2 = a * a, b * b
        x2 = x * x
        num = 0.5 * (a2 - b2) * x2 + (a2 * a2 + b2 * b2 - 6.0 * a2 * b2) * x2 * x2 / 24.0
    else:
        num = math.cosh(a * x) * math.cos(b * x) - 1.0
    return num * math.exp(-s * x) / (x * math.sinh(2.0 * x) * math.cosh(x))


def _chunked_quad(f, lo: float, hi: float, osc: float, spec: QuadratureSpec):
    """Integrate f on (lo, hi) in segments short enough for the oscillation
    rate `osc` (radians per unit x); returns (value, error)."""
    n = max(4, int(math.ceil((hi - lo) * (osc + 1.0) / 10.0)))
    edges = np.linspace(lo, hi, n + 1)
    tol = QuadratureSpec(
        abs_tol=spec.abs_tol / n, rel_tol=spec.rel_tol,
        split_point=spec.split_point, max_subdivisions=spec.max_subdivisions,
    )
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = integrate_adaptive(f, a, b, tol)
        total += v
        err += e
    return total, err


def exponent_integral(sign: str, arg: FormFactorArg, spec: QuadratureSpec = QuadratureSpec()):
    """The exponent I± for |A±|² = exp(-I±); returns (value, error_estimate)."""
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    g = min(abs(arg.gamma), GAMMA_CAP)  # integrand is even in gamma
    d = arg.delta
    s = 1.0 if sign == "plus" else -1.0
    a = 2.0 * (1.0 - d / math.pi)
    b = 2.0 * g / math.pi
    c = 2.0 * d / math.pi

    if sign == "minus" and b == 0.0 and c == 0.0:
        raise BoundaryDivergence(
            "|A-(0)|^2: exponent integral diverges to +inf (amplitude -> 0)"
        )

    x0 = spec.split_point
    f = lambda x: _integrand(x, s, a, b)
    value, err = _chunked_quad(f, 0.0, x0, b, spec)

    if sign == "plus":
        # tail decays at least like e^(-2x); a short numeric stretch suffices
        tv, te = _chunked_quad(f, x0, x0 + 30.0, b, spec)
        value += tv
        err += te + math.exp(-2.0 * (x0 + 30.0))
    else:
        # closed-form tail of the asymptote 2 e^(-cx) cos(bx) / x
        if c == 0.0:
            value += -2.0 * cosine_integral(b * x0)
        else:
            value += 2.0 * float(np.real(scipy.special.exp1(complex(c, b) * x0)))
        # residual (integrand minus asymptote) decays like e^(-2x)
        resid = lambda x: f(x) - 2.0 * math.exp(-c * x) * math.cos(b * x) / x
        bound = math.exp(-2.0 * x0)
        if bound > spec.abs_tol * 1e-3:
            rv, re = _chunked_quad(resid, x0, x0 + 25.0, b, spec)
            value += rv
            err += re + math.exp(-2.0 * (x0 + 25.0))
        else:
            err += bound
    return value, err


def a_sq(sign: str, arg: FormFactorArg, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Squared form-factor amplitude |A±(α)|².

    |gamma| is capped at :data:`GAMMA_CAP`; raises
    :class:`BoundaryDivergence` for the minus sign at α = 0.
    """
    value, _ = exponent_integral(sign, arg, spec)
    return math.exp(-value)


_constants_lock = threading.Lock()
_constants_cache: dict[QuadratureSpec, DcfConstants] = {}


def constants(spec: QuadratureSpec = QuadratureSpec()) -> DcfConstants:
    """DCF prefactor constants, computed once per quadrature spec."""
    with _constants_lock:
        cached = _constants_cache.get(spec)
        if cached is not None:
            return cached
        gamma_ratio = (gamma_fn(0.75) / gamma_fn(0.25)) ** 2
        half = FormFactorArg(0.0, math.pi / 2.0)
        ip, ep = exponent_integral("plus", half, spec)
        im, em = exponent_integral("minus", half, spec)
        a_plus = math.exp(-ip)
        a_minus = math.exp(-im)
        result = DcfConstants(
            gamma_ratio=gamma_ratio,
            a_plus_sq_half=a_plus,
            a_minus_sq_half=a_minus,
            prefactor=math.pi ** 2 * gamma_ratio / (4.0 * a_plus * a_minus),
            quad_error=ep + em,
        )
        _constants_cache[spec] = result
        return result
