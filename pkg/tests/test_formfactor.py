import math
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinon_dcf.formfactor import (
    GAMMA_CAP,
    BoundaryDivergence,
    Convergence,
    FormFactorArg,
    a_sq,
    constants,
    exponent_integral,
)
from spinon_dcf.specfun import QuadratureSpec

# dual-scheme values (package quadrature pipeline vs 30-digit mpmath
# tanh-sinh quadrature of the same exponent integral), agreeing to 2e-13
A_PLUS_SQ_HALF = 0.87037219443500882
A_MINUS_SQ_HALF = 0.57446688117670018
PREFACTOR = 0.56373524841739669


class TestTrivialPoints:
    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_zero_integrand(self, sign):
        # gamma = 0, delta = pi makes the numerator vanish identically
        assert a_sq(sign, FormFactorArg(0.0, math.pi)) == pytest.approx(1.0, abs=1e-10)

    def test_divergent_point(self):
        with pytest.raises(BoundaryDivergence):
            a_sq("minus", FormFactorArg(0.0, 0.0))

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            a_sq("both", FormFactorArg(0.0, 1.0))

    def test_delta_domain(self):
        with pytest.raises(ValueError):
            FormFactorArg(0.0, -0.1)
        with pytest.raises(ValueError):
            FormFactorArg(0.0, math.pi + 0.1)

    def test_convergence_tags(self):
        assert FormFactorArg(1.0, 0.0).convergence("minus") is Convergence.CONDITIONAL
        assert FormFactorArg(1.0, 0.0).convergence("plus") is Convergence.ABSOLUTE
        assert FormFactorArg(1.0, 0.5).convergence("minus") is Convergence.ABSOLUTE


class TestHalfPoint:
    @pytest.mark.parametrize("split", [30.0, 40.0, 60.0])
    def test_split_independence_plus(self, split):
        spec = QuadratureSpec(split_point=split)
        value = a_sq("plus", FormFactorArg(0.0, math.pi / 2), spec)
        assert value == pytest.approx(A_PLUS_SQ_HALF, rel=1e-9)

    @pytest.mark.parametrize("split", [30.0, 40.0, 60.0])
    def test_split_independence_minus(self, split):
        spec = QuadratureSpec(split_point=split)
        value = a_sq("minus", FormFactorArg(0.0, math.pi / 2), spec)
        assert value == pytest.approx(A_MINUS_SQ_HALF, rel=1e-9)

    def test_tolerance_halving(self):
        loose = QuadratureSpec(abs_tol=2e-10, rel_tol=2e-10)
        tight = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10)
        for sign in ("plus", "minus"):
            v1 = a_sq(sign, FormFactorArg(0.0, math.pi / 2), loose)
            v2 = a_sq(sign, FormFactorArg(0.0, math.pi / 2), tight)
            assert v1 == pytest.approx(v2, rel=1e-9)


class TestConditionalPath:
    def test_split_independence_on_real_axis(self):
        # conditionally convergent case: closed-form cosine-integral tail
        for split in (30.0, 40.0, 60.0):
            spec = QuadratureSpec(split_point=split)
            ref = a_sq("minus", FormFactorArg(2.6339157938496334, 0.0))
            value = a_sq("minus", FormFactorArg(2.6339157938496334, 0.0), spec)
            assert value == pytest.approx(ref, rel=1e-9)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.6])
    def test_continuity_in_gamma(self, gamma):
        base = a_sq("minus", FormFactorArg(gamma, 0.0))
        diffs = []
        for h in (1e-2, 1e-3, 1e-4):
            diffs.append(abs(a_sq("minus", FormFactorArg(gamma + h, 0.0)) - base))
        assert diffs[0] > diffs[1] > diffs[2]
        # finite differences shrink linearly with h
        assert diffs[1] == pytest.approx(diffs[0] / 10.0, rel=0.2)

    def test_large_gamma_envelope(self):
        # brute-force sampling of the integrand at large x approaches
        # 2 cos(2 x gamma / pi) / x, which is what the tail subtraction uses
        gamma = 1.3
        b = 2 * gamma / math.pi
        for x in (5.0, 8.0, 12.0):
            full = (math.cosh(2 * x) * math.cos(b * x) - 1.0) * math.exp(x) / (
                x * math.sinh(2 * x) * math.cosh(x)
            )
            bound = 10.0 * math.exp(-2 * x) / x + 1e-14
            assert full == pytest.approx(2 * math.cos(b * x) / x, abs=bound)

    def test_gamma_cap(self):
        capped = a_sq("minus", FormFactorArg(GAMMA_CAP + 10.0, 0.0))
        at_cap = a_sq("minus", FormFactorArg(GAMMA_CAP, 0.0))
        assert capped == at_cap


class TestProperties:
    @settings(max_examples=25, deadline=None)
    @given(
        gamma=st.floats(min_value=-10.0, max_value=10.0),
        delta=st.floats(min_value=0.0, max_value=math.pi),
        sign=st.sampled_from(["plus", "minus"]),
    )
    def test_positive_and_even(self, gamma, delta, sign):
        if sign == "minus" and delta < 1e-3 and abs(gamma) < 1e-3:
            return  # divergent corner; the value underflows toward 0
        value = a_sq(sign, FormFactorArg(gamma, delta))
        assert value > 0.0
        assert a_sq(sign, FormFactorArg(-gamma, delta)) == value


class TestConstants:
    def test_gamma_ratio_reflection_crosscheck(self):
        c = constants()
        # Gamma(1/4) Gamma(3/4) = pi sqrt(2) pins the ratio
        gamma_quarter = math.sqrt(math.pi * math.sqrt(2.0) / math.sqrt(c.gamma_ratio))
        three_quarter = math.pi * math.sqrt(2.0) / gamma_quarter
        assert (three_quarter / gamma_quarter) ** 2 == pytest.approx(
            c.gamma_ratio, rel=1e-12
        )
        assert c.gamma_ratio == pytest.approx(0.11423664526111590, rel=1e-12)

    def test_half_point_values(self):
        c = constants()
        assert c.a_plus_sq_half == pytest.approx(A_PLUS_SQ_HALF, rel=1e-9)
        assert c.a_minus_sq_half == pytest.approx(A_MINUS_SQ_HALF, rel=1e-9)

    def test_prefactor_assembly(self):
        c = constants()
        expected = math.pi ** 2 * c.gamma_ratio / (4 * c.a_plus_sq_half * c.a_minus_sq_half)
        assert c.prefactor == expected
        assert c.prefactor == pytest.approx(PREFACTOR, rel=1e-9)
        assert min(c.gamma_ratio, c.a_plus_sq_half, c.a_minus_sq_half, c.prefactor) > 0

    def test_cached_and_idempotent(self):
        assert constants() is constants()

    def test_concurrent_first_call(self):
        spec = QuadratureSpec(abs_tol=3e-11)  # fresh cache key
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda _: constants(spec), range(8)))
        assert all(r is results[0] for r in results)


class TestExponentIntegral:
    def test_error_estimate_returned(self):
        value, err = exponent_integral("plus", FormFactorArg(0.0, math.pi / 2))
        assert err < 1e-9
        assert math.exp(-value) == pytest.approx(A_PLUS_SQ_HALF, rel=1e-10)
