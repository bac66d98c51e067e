"""Exact two-spinon dynamical correlation function of the spin-1/2
isotropic Heisenberg antiferromagnet, with the anisotropic spinon
dispersion machinery and a finite-chain exact-diagonalization oracle."""

from .dcf import (
    DcfValue,
    EdgeFlag,
    Lineshape,
    SumruleResult,
    intensity_sumrule,
    lineshape,
    s2_component,
    s2_pm,
)
from .formfactor import (
    GAMMA_CAP,
    BoundaryDivergence,
    DcfConstants,
    FormFactorArg,
    a_sq,
    constants,
)
from .kinematics import (
    BandPoint,
    OutOfBandError,
    RapidityPair,
    Region,
    SpinonState,
    band_boundaries,
    classify,
    invert_kinematics,
    spinon_energy,
    spinon_momentum,
)
from .specfun import (
    EllipticPair,
    QuadratureError,
    QuadratureSpec,
    cosine_integral,
    elliptic_complete,
    gamma_fn,
    integrate_adaptive,
    jacobi_am,
    jacobi_dn,
    q_pochhammer,
    theta_fn,
)
from .xxz import (
    Anisotropy,
    anisotropy_from_delta,
    tau_fn,
    xxz_energy,
    xxz_energy_logderiv,
    xxz_momentum,
    xxz_momentum_theta,
)

__version__ = "0.1.0"
