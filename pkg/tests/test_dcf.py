import math

import numpy as np
import pytest

from spinon_dcf.dcf import (
    EdgeFlag,
    intensity_sumrule,
    lineshape,
    lineshape_grid,
    s2_component,
    s2_pm,
)
from spinon_dcf.kinematics import Region, band_boundaries, invert_kinematics
from spinon_dcf.specfun import QuadratureSpec

# worked point (k = pi, omega = pi): composition of the verified parts,
# cross-checked against a 30-digit mpmath evaluation of the same formula
S2_PM_PI_PI = 0.30991950197266157

# converged value of the intensity integral at (64, 64), frozen from the
# refinement sequence 0.81827 / 0.82085 / 0.82156 / 0.82176 (16..128)
I2_CONVERGED = 0.82156


class TestPointEvaluation:
    def test_outside_band_above(self):
        v = s2_pm(math.pi, 7.0)
        assert v.s_pm == 0.0 and v.s_zz == 0.0
        assert v.region is Region.ABOVE

    def test_outside_band_below(self):
        v = s2_pm(math.pi / 2, 3.0)
        assert v.s_pm == 0.0
        assert v.region is Region.BELOW

    def test_zero_on_boundaries(self):
        assert s2_pm(math.pi / 2, math.pi).s_pm == 0.0
        w_u = 2 * math.pi * math.sin(0.65)
        assert s2_pm(1.3, w_u).s_pm == 0.0

    def test_worked_point(self):
        v = s2_pm(math.pi, math.pi)
        assert v.region is Region.INSIDE
        assert v.s_pm == pytest.approx(S2_PM_PI_PI, rel=1e-9)
        assert v.gamma_arg == pytest.approx(-2.6339157938496334, abs=1e-10)
        assert v.edge_flag is EdgeFlag.NONE

    def test_gamma_consistency(self):
        for k, frac in ((1.0, 0.3), (math.pi, 0.5), (2.5, 0.9)):
            w_l, w_u = band_boundaries(k)
            omega = w_l + (w_u - w_l) * frac
            v = s2_pm(k, omega)
            assert v.gamma_arg == pytest.approx(
                invert_kinematics(k, omega).gamma, abs=1e-10
            )

    def test_edge_flags(self):
        assert s2_pm(math.pi, 1e-11).edge_flag is EdgeFlag.NEAR_LOWER
        _, w_u = band_boundaries(math.pi)
        assert s2_pm(math.pi, w_u * (1 - 1e-9)).edge_flag is EdgeFlag.NEAR_UPPER


class TestEdgeBehavior:
    def test_vanishes_near_upper_boundary(self):
        values = [s2_pm(math.pi, 2 * math.pi * (1 - 4.0 ** -j)).s_pm for j in range(1, 9)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 0.05 * values[0]

    def test_diverges_near_lower_boundary(self):
        k = math.pi / 2
        w_l, w_u = band_boundaries(k)
        values = [s2_pm(k, w_l + (w_u - w_l) * 4.0 ** -j).s_pm for j in range(1, 9)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert values[-1] > 100 * values[0]


class TestComponents:
    def test_zz_is_four_pm(self):
        for k, omega in ((math.pi, math.pi), (2.0, 4.0), (1.2, 3.0)):
            pm = s2_component("pm", k, omega)
            assert s2_component("zz", k, omega) == 4.0 * pm
            assert s2_component("xx", k, omega) == s2_component("yy", k, omega)

    def test_outside_band_all_zero(self):
        for comp in ("xx", "yy", "zz", "pm"):
            assert s2_component(comp, math.pi, 7.0) == 0.0

    def test_unknown_component(self):
        with pytest.raises(ValueError):
            s2_component("xy", 1.0, 1.0)

    def test_reflection_symmetry(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 20:
            k = rng.uniform(0.3, math.pi)
            w_l, w_u = band_boundaries(k)
            width = w_u - w_l
            omega = rng.uniform(w_l + 0.01 * width, w_u - 0.01 * width)
            v1 = s2_pm(k, omega).s_pm
            v2 = s2_pm(2 * math.pi - k, omega).s_pm
            if v1 == 0.0:
                continue
            assert v2 == pytest.approx(v1, rel=1e-9)
            checked += 1

    def test_positive_inside(self):
        for k in (0.5, 1.5, math.pi):
            w_l, w_u = band_boundaries(k)
            for frac in (0.1, 0.5, 0.9):
                assert s2_pm(k, w_l + (w_u - w_l) * frac).s_pm > 0.0


class TestLineshape:
    def test_empty_band(self):
        shape = lineshape(0.0, 32)
        assert np.all(shape.values == 0.0)

    def test_positive_strictly_inside(self):
        shape = lineshape(math.pi, 48)
        inside = (shape.omega_grid > shape.w_l + 1e-9) & (
            shape.omega_grid < shape.w_u - 1e-9
        )
        assert np.all(shape.values[inside] > 0.0)
        assert np.all(shape.values[~inside] == 0.0)

    def test_grid_construction(self):
        grid = lineshape_grid(1.0, 4.0, 40)
        assert np.all(np.diff(grid) > 0)
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(4.2)
        # clustered points sit near both boundaries
        assert np.any(np.abs(grid - 1.0) < 0.01)
        assert np.any(np.abs(grid - 4.0) < 0.01)
        with pytest.raises(ValueError):
            lineshape_grid(1.0, 4.0, 1)


class TestSumRule:
    def test_value_and_refinement(self):
        coarse = intensity_sumrule(k_points=16, omega_points=16)
        fine = intensity_sumrule(k_points=32, omega_points=32)
        assert 0.0 < fine.value < 1.0
        assert abs(fine.value - coarse.value) / fine.value < 0.01
        assert fine.value == pytest.approx(I2_CONVERGED, rel=0.01)
        assert fine.error_estimate < 0.01 * fine.value

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            intensity_sumrule(k_points=8, omega_points=32)

    def test_integrable_lower_edge(self):
        # shrinking the excluded strip converges (integrable singularity)
        k = math.pi / 2
        w_l, w_u = band_boundaries(k)
        x, w = np.polynomial.legendre.leggauss(64)
        values = []
        for j in (2, 3, 4, 5, 6, 7):
            delta = (w_u - w_l) * 4.0 ** -j
            lo = w_l + delta
            omegas = 0.5 * (x + 1) * (w_u - lo) + lo
            values.append(sum(
                wi * 0.5 * (w_u - lo) * s2_pm(k, om).s_zz for om, wi in zip(omegas, w)
            ))
        diffs = [abs(b - a) for a, b in zip(values, values[1:])]
        # the excluded mass scales like sqrt(strip width): each step halves it
        assert all(b < 0.7 * a for a, b in zip(diffs, diffs[1:]))
        assert diffs[-1] < 0.03 * values[-1]
