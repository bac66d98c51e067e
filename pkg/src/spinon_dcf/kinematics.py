"""Isotropic spinon dispersion, two-spinon band geometry, and the closed-form
inversion of the energy-momentum constraints.

Conventions: spinon momentum p lies on the branch [-pi, 0] with
cot(p) = sinh(beta) (p(0) = -pi/2, decreasing in beta); momentum
transfer k is folded to [0, 2pi).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi
BOUNDARY_TOL = 1e-12


class Region(enum.Enum):
    INSIDE = "INSIDE"
    BELOW = "BELOW"
    ABOVE = "ABOVE"
    ON_LOWER = "ON_LOWER"
    ON_UPPER = "ON_UPPER"


class OutOfBandError(ValueError):
    """Kinematic inversion requested outside the open two-spinon band."""


def fold_k(k: float) -> float:
    """Fold a momentum transfer into [0, 2pi)."""
    k = math.fmod(k, TWO_PI)
    return k + TWO_PI if k < 0 else k


def spinon_momentum(beta: float) -> float:
    """Spinon momentum p(beta) in [-pi, 0] with cot(p) = sinh(beta)."""
    return -math.pi / 2.0 - math.atan(math.sinh(beta))


def spinon_energy(beta: float) -> float:
    """Spinon energy e(beta) = pi / cosh(beta) = -pi sin(p(beta))."""
    return math.pi / math.cosh(beta)


@dataclass(frozen=True)
class SpinonState:
    beta: float
    p: float
    e: float

    @classmethod
    def from_beta(cls, beta: float) -> "SpinonState":
        return cls(beta=beta, p=spinon_momentum(beta), e=spinon_energy(beta))


@dataclass(frozen=True)
class BandPoint:
    k: float
    omega: float
    region: Region


@dataclass(frozen=True)
class RapidityPair:
    """Unordered rapidity pair, stored with beta1 <= beta2."""

    beta1: float
    beta2: float

    def __post_init__(self):
        if self.beta1 > self.beta2:
            raise ValueError("RapidityPair must satisfy beta1 <= beta2")

    @property
    def gamma(self) -> float:
        """Form-factor argument beta1 - beta2 (non-positive by ordering)."""
        return self.beta1 - self.beta2

    def forward(self) -> tuple[float, float]:
        """Map back to (k, omega)."""
        k = fold_k(-spinon_momentum(self.beta1) - spinon_momentum(self.beta2))
        omega = spinon_energy(self.beta1) + spinon_energy(self.beta2)
        return k, omega


def band_boundaries(k: float) -> tuple[float, float]:
    """Lower and upper two-spinon band boundaries (w_l, w_u) at transfer k."""
    k = fold_k(k)
    return math.pi * abs(math.sin(k)), TWO_PI * math.sin(k / 2.0)


def classify(k: float, omega: float) -> BandPoint:
    """Locate (k, omega) relative to the two-spinon band."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    k = fold_k(k)
    w_l, w_u = band_boundaries(k)
    if abs(omega - w_l) <= BOUNDARY_TOL:
        region = Region.ON_LOWER
    elif abs(omega - w_u) <= BOUNDARY_TOL:
        region = Region.ON_UPPER
    elif omega < w_l:
        region = Region.BELOW
    elif omega > w_u:
        region = Region.ABOVE
    else:
        region = Region.INSIDE
    return BandPoint(k=k, omega=omega, region=region)


def invert_kinematics(k: float, omega: float) -> RapidityPair:
    """Solve omega = e(b1) + e(b2), k = -p(b1) - p(b2) inside the band.

    Closed form: with p1 + p2 = -k and sin p1 + sin p2 = -omega/pi,
    cos((p1 - p2)/2) = omega / (2 pi sin(k/2)).
    """
    point = classify(k, omega)
    if point.region is not Region.INSIDE:
        raise OutOfBandError(
            f"(k={k}, omega={omega}) lies {point.region.value}, not INSIDE"
        )
    k = point.k
    _, w_u = band_boundaries(k)
    half_diff = math.acos(min(1.0, omega / w_u))
    p1 = -k / 2.0 + half_diff
    p2 = -k / 2.0 - half_diff
    if not (-math.pi < p1 < 0.0 and -math.pi < p2 < 0.0):
        raise ArithmeticError(
            f"spinon momentum hit a branch endpoint: p1={p1}, p2={p2}"
        )
    b1 = math.asinh(1.0 / math.tan(p1))
    b2 = math.asinh(1.0 / math.tan(p2))
    if b1 > b2:
        b1, b2 = b2, b1
    return RapidityPair(beta1=b1, beta2=b2)
