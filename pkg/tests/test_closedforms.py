"""Closed-form tests: multiplicative functions, power products, variance,
and the subset-box alternative formulas."""

from fractions import Fraction

import numpy as np
import pytest

from ordinfluence import (
    BranchAmbiguityError,
    DomainError,
    MultiplicativeSpec,
    UnaryFactor,
    influence_exact,
    influence_multiplicative,
    influence_power_product,
    influence_symmetric_multiplicative,
    influence_via_alternative,
    monomial,
    polynomial,
    power_product_ratio,
    symmetrize,
    variance_profile,
)
from ordinfluence.closedforms import subset_box_integral, variance_plain_terms
from ordinfluence.projection import approximation_exact


class TestPowerProduct:
    def test_example_n2_c1(self):
        assert influence_power_product(1, 2, 1) == pytest.approx(0.8, abs=1e-12)
        assert influence_power_product(1, 2, 2) == pytest.approx(0.2, abs=1e-12)

    def test_against_exact_kernel(self):
        # integer exponents are order-stat polynomials after symmetrization;
        # but (x1...xn)^c is already symmetric: prod x_i = prod x_{(i)}
        for c in (1, 2, 3):
            for n in (2, 3):
                poly = polynomial(n, [monomial(n, {k: c for k in range(1, n + 1)})])
                for k in range(1, n + 1):
                    assert influence_power_product(c, n, k) == pytest.approx(
                        float(influence_exact(poly, k)), rel=1e-12)

    def test_monotone_decreasing_in_k(self):
        for n in range(2, 7):
            for c in (0.1, 1 / 3, 0.5, 1.0, 2.0, 5.0):
                values = [influence_power_product(c, n, k)
                          for k in range(1, n + 1)]
                assert all(a > b for a, b in zip(values, values[1:]))

    def test_ratio_consistent_with_direct(self):
        for n in (2, 3, 4):
            for c in (1 / 3, 1.0, 2.0):
                base = influence_power_product(c, n, 1)
                for k in range(1, n + 1):
                    assert power_product_ratio(c, k) == pytest.approx(
                        influence_power_product(c, n, k) / base, rel=1e-12)

    def test_ratio_limit_near_half(self):
        # as c -> -1/2 all indices approach the first one
        for k in (2, 3, 4):
            assert power_product_ratio(-0.4999, k) == pytest.approx(1.0, abs=1e-3)

    def test_domain(self):
        with pytest.raises(DomainError):
            influence_power_product(-0.5, 2, 1)
        with pytest.raises(DomainError):
            influence_power_product(1, 2, 3)


class TestMultiplicative:
    def test_symmetric_power_factors_match_gamma_formula(self):
        for n in (2, 3):
            for c in (Fraction(1, 3), Fraction(1), Fraction(2)):
                spec = MultiplicativeSpec.symmetric(UnaryFactor.power(c), n)
                for k in range(1, n + 1):
                    expected = influence_power_product(float(c), n, k)
                    assert influence_multiplicative(spec, k) == pytest.approx(
                        expected, rel=1e-9)
                    assert influence_symmetric_multiplicative(
                        UnaryFactor.power(c), n, k) == pytest.approx(
                        expected, rel=1e-8)

    def test_mixed_identity_and_constant_factor(self):
        # phi_1(t) = t, phi_2(t) = 1 gives f(x) = x_1, whose profile is (1/2, 1/2)
        spec = MultiplicativeSpec(2, (UnaryFactor.power(1), UnaryFactor.power(0)))
        assert influence_multiplicative(spec, 1) == pytest.approx(0.5, abs=1e-9)
        assert influence_multiplicative(spec, 2) == pytest.approx(0.5, abs=1e-9)

    def test_beta_density_branch_normalized(self):
        # the Phi(1) != 0 integrand integrates the derivative of a beta
        # density, so the index of the constant-one function vanishes
        factor = UnaryFactor.power(0)
        for n in (2, 3, 4):
            for k in range(1, n + 1):
                assert influence_symmetric_multiplicative(
                    factor, n, k) == pytest.approx(0.0, abs=1e-9)

    def test_phi_one_zero_branch(self):
        # phi(t) = 2t - 1 has Phi(1) = 0 exactly; both routes must agree
        factor = UnaryFactor.from_callable(
            lambda t: 2.0 * t - 1.0, antiderivative=lambda y: y * y - y,
            declared_phi_one=0)
        for n in (2, 3):
            spec = MultiplicativeSpec.symmetric(factor, n)
            for k in range(1, n + 1):
                assert influence_symmetric_multiplicative(
                    factor, n, k) == pytest.approx(
                    influence_multiplicative(spec, k), rel=1e-8, abs=1e-10)

    def test_ambiguous_phi_one_raises(self):
        factor = UnaryFactor.from_callable(lambda t: 2.0 * t - 1.0)
        with pytest.raises(BranchAmbiguityError):
            influence_symmetric_multiplicative(factor, 2, 1)

    def test_mean_and_norm(self):
        spec = MultiplicativeSpec.symmetric(UnaryFactor.power(1), 2)
        assert spec.mean() == pytest.approx(0.25, abs=1e-12)
        assert spec.norm_sq() == pytest.approx(1 / 9, abs=1e-12)


class TestVariance:
    def test_profile_formula_vs_exact_kernel(self):
        for n in range(2, 6):
            closed = variance_profile(n)
            poly = symmetrize(n, variance_plain_terms(n))
            approx = approximation_exact(poly)
            assert approx.coefficients[:-1] == closed.indices
            assert approx.coefficients[-1] == closed.intercept
            assert closed.gini_consistent

    def test_antisymmetric_profile(self):
        for n in range(2, 8):
            closed = variance_profile(n)
            for k in range(1, n + 1):
                assert closed.indices[k - 1] == -closed.indices[n - k]

    def test_n2_values(self):
        closed = variance_profile(2)
        assert closed.indices == (Fraction(-1, 5), Fraction(1, 5))
        assert closed.intercept == Fraction(-1, 40)


class TestAlternativeFormulas:
    @pytest.mark.parametrize("formula", ["dfsg5", "dfsg6", "dfsg7"])
    def test_multiplicative_agreement(self, formula):
        cases = [
            MultiplicativeSpec.symmetric(UnaryFactor.power(1), 2),
            MultiplicativeSpec.symmetric(UnaryFactor.power(Fraction(1, 2)), 3),
            MultiplicativeSpec(3, (UnaryFactor.power(1), UnaryFactor.power(2),
                                   UnaryFactor.power(0))),
            MultiplicativeSpec.symmetric(UnaryFactor.power(1), 4),
        ]
        for spec in cases:
            n = spec.arity
            for k in range(1, n + 1):
                reference = influence_multiplicative(spec, k)
                assert influence_via_alternative(spec, k, formula) == \
                    pytest.approx(reference, abs=1e-7)

    @pytest.mark.parametrize("formula", ["dfsg5", "dfsg6", "dfsg7"])
    def test_variance_n2(self, formula):
        class VarianceEvaluator:
            arity = 2

            @staticmethod
            def evaluate(x):
                x = np.asarray(x, dtype=float)
                mean = x.mean(axis=1)
                return ((x - mean[:, None]) ** 2).mean(axis=1)

        closed = variance_profile(2)
        for k in (1, 2):
            assert influence_via_alternative(VarianceEvaluator, k, formula) == \
                pytest.approx(float(closed.indices[k - 1]), abs=1e-7)

    def test_box_integral_modes(self):
        # lower + split partitions the cube cross-section for a one-element
        # subset: int_0^1 (lower + split + mixed) checks against direct values
        spec = MultiplicativeSpec.symmetric(UnaryFactor.power(1), 2)
        lower = subset_box_integral(spec, (1,), "lower-box")
        upper = subset_box_integral(spec, (1,), "upper-box")
        # int_0^1 [ int_0^y x1 dx1 * 1/2 ] dy = (1/2) int y^2/2 = 1/12
        assert lower == pytest.approx(1 / 12, abs=1e-10)
        # complement: int over [y,1] = (1 - y^2)/2 -> (1/2)(1 - 1/3)/2 = 1/6
        assert upper == pytest.approx(1 / 6, abs=1e-10)
        assert subset_box_integral(spec, (1,), "split") == pytest.approx(
            (1 / 12) * 0 + _split_reference(), abs=1e-10)

    def test_bad_inputs(self):
        spec = MultiplicativeSpec.symmetric(UnaryFactor.power(1), 2)
        with pytest.raises(DomainError):
            subset_box_integral(spec, (1,), "diagonal")
        with pytest.raises(DomainError):
            influence_via_alternative(spec, 1, "dfsg9")


def _split_reference():
    # int_0^1 (y^2/2) * ((1 - y^2)/2) dy = (1/4)(1/3 - 1/5) = 1/30
    return 1 / 30
