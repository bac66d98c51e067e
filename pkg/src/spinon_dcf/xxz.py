"""Anisotropic (XXZ) spinon dispersion in its two equivalent forms.

The massive antiferromagnetic regime Delta < -1 maps to -1 < q < 0 via
Delta = (q + 1/q)/2, with nome -q = exp(-pi K'/K).  The spinon momentum
and energy can be written either through theta-function quotients of
tau(xi) or through Jacobi elliptic functions; both are implemented and
cross-validated.  This module does not feed the isotropic DCF; it
exists for validation of the dispersion machinery.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .specfun import EllipticPair, jacobi_am, jacobi_dn, theta_fn

_UNIT_CIRCLE_TOL = 1e-10


@dataclass(frozen=True)
class Anisotropy:
    delta_param: float
    q: float
    nome: float
    m: float
    elliptic: EllipticPair


def _theta2(p: float) -> float:
    s, n = 0.0, 0
    while True:
        t = p ** (n * (n + 1))
        s += t
        n += 1
        if t < 1e-17:
            break
    return 2.0 * p ** 0.25 * s


def _theta3(p: float) -> float:
    s, n = 1.0, 1
    while True:
        t = p ** (n * n)
        s += 2.0 * t
        n += 1
        if t < 1e-17:
            break
    return s


def anisotropy_from_delta(delta_param: float) -> Anisotropy:
    """Build the anisotropy data for Delta < -1 by nome inversion."""
    if not delta_param < -1.0:
        raise ValueError(f"requires Delta < -1, got {delta_param}")
    q = delta_param + math.sqrt(delta_param * delta_param - 1.0)  # in (-1, 0)
    nome = -q
    th2, th3 = _theta2(nome), _theta3(nome)
    m = (th2 / th3) ** 4
    K = math.pi / 2.0 * th3 * th3
    Kprime = -K * math.log(nome) / math.pi
    return Anisotropy(
        delta_param=delta_param, q=q, nome=nome, m=m,
        elliptic=EllipticPair(m=m, K=K, Kprime=Kprime),
    )


def tau_fn(a: Anisotropy, xi: complex) -> complex:
    """tau(xi) = xi^{-1} theta_{q^4}(q xi^2) / theta_{q^4}(q xi^{-2}).

    Defined for xi on the unit circle, where |tau| = 1.
    """
    if abs(abs(xi) - 1.0) > _UNIT_CIRCLE_TOL:
        raise ValueError(f"tau_fn requires |xi| = 1, got |xi| = {abs(xi)}")
    q = a.q
    x = q ** 4
    return theta_fn(x, q * xi * xi) / (xi * theta_fn(x, q / (xi * xi)))


def xxz_momentum(a: Anisotropy, alpha: float) -> float:
    """Spinon momentum p(alpha) = am(2K alpha / pi) - pi/2 (elliptic form)."""
    return jacobi_am(2.0 * a.elliptic.K * alpha / math.pi, a.m) - math.pi / 2.0


# The literal theta-quotient carries a constant winding offset of pi
# relative to the elliptic-amplitude branch: tau(i) = -i while
# e^{-ip(0)} = e^{i pi/2} = +i.  The offset is global (tau(-xi) = -tau(xi)
# matches p(alpha + pi) = p(alpha) + pi), so it is removed here once.
WINDING_OFFSET = -1.0


def xxz_momentum_theta(a: Anisotropy, alpha: float) -> float:
    """Spinon momentum from tau(xi) = e^{-ip}, principal value in (-pi, pi].

    The constant winding offset between the two branch conventions is
    divided out (see :data:`WINDING_OFFSET`), so the result matches
    :func:`xxz_momentum` modulo 2 pi.
    """
    tau = tau_fn(a, 1j * cmath.exp(1j * alpha))
    return -cmath.phase(tau / WINDING_OFFSET)


def xxz_energy(a: Anisotropy, alpha: float) -> float:
    """Spinon energy (2K/pi) sinh(pi K'/K) dn(2K alpha / pi) (elliptic form)."""
    ell = a.elliptic
    scale = 2.0 * ell.K / math.pi * math.sinh(math.pi * ell.Kprime / ell.K)
    return scale * jacobi_dn(2.0 * ell.K * alpha / math.pi, a.m)


def xxz_energy_logderiv(a: Anisotropy, alpha: float, h: float = 1e-5) -> float:
    """Spinon energy from (1-q^2)/(2q) xi d/dxi log tau(xi).

    On the unit circle xi d/dxi = -i d/dalpha; the derivative is taken by
    a central difference of the phase of tau, so the result agrees with
    the elliptic form only to the differencing accuracy (~1e-6).
    """
    tp = tau_fn(a, 1j * cmath.exp(1j * (alpha + h)))
    tm = tau_fn(a, 1j * cmath.exp(1j * (alpha - h)))
    dlog = cmath.log(tp / tm) / (2.0 * h)  # phase difference stays small
    q = a.q
    return ((1.0 - q * q) / (2.0 * q) * (-1j) * dlog).real
