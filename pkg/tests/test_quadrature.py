import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexinterp import (
    MAX_EXACTNESS,
    Polynomial,
    SeminormSpec,
    box_constraint_p_valid,
    integrate,
    interpolation_p_valid,
    lp_norm,
    lp_norm_detailed,
    map_rule,
    random_simplex,
    reference_moment,
    reference_simplex,
    seminorm,
    seminorm_decomposition_gap,
    simplex_rule,
    squeeze,
    squeeze_bound_p_valid,
    squeeze_seminorm_identity_check,
)
from simplexinterp.multiindex import enumerate_upto
from tests.conftest import random_polynomial


class TestReferenceMoments:
    def test_triangle_closed_form(self):
        # int_ref x^a y^b = a! b! / (a+b+2)!
        for a in range(5):
            for b in range(5):
                expect = (
                    math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)
                )
                assert reference_moment((a, b)) == pytest.approx(expect, rel=1e-14)

    def test_tet_closed_form(self):
        for e in [(0, 0, 0), (1, 0, 0), (2, 1, 0), (1, 1, 1), (3, 2, 1)]:
            num = math.prod(math.factorial(a) for a in e)
            expect = num / math.factorial(sum(e) + 3)
            assert reference_moment(e) == pytest.approx(expect, rel=1e-14)


class TestSimplexRule:
    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("exactness", [1, 2, 5, 8, 14, 21])
    def test_exact_on_monomials(self, d, exactness):
        rule = simplex_rule(d, exactness)
        ref = reference_simplex(d)
        for e in enumerate_upto(d, exactness):
            q = Polynomial.monomial(e)
            assert integrate(q, ref, rule) == pytest.approx(
                reference_moment(e), rel=1e-12, abs=1e-15
            )

    def test_weights_positive_and_sum_to_volume(self):
        for d in (2, 3):
            rule = simplex_rule(d, 11)
            assert rule.weights.min() > 0.0
            assert rule.weights.sum() == pytest.approx(1.0 / math.factorial(d))

    def test_exactness_capped(self):
        with pytest.raises(ValueError):
            simplex_rule(2, MAX_EXACTNESS + 1)
        with pytest.raises(ValueError):
            simplex_rule(4, 2)

    def test_map_rule_change_of_variables(self, rng):
        K = random_simplex(2, rng)
        rule = simplex_rule(2, 6)
        pts, wts = map_rule(rule, K)
        q = random_polynomial(2, 6, rng)
        direct = float(wts @ q.eval(pts))
        assert direct == pytest.approx(integrate(q, K, rule), rel=1e-12)
        assert wts.sum() == pytest.approx(K.volume)

    def test_integrate_callable(self):
        ref = reference_simplex(2)
        val = integrate(lambda x: x[0], ref, simplex_rule(2, 3))
        assert val == pytest.approx(1.0 / 6.0)


class TestLpNorm:
    def test_reference_oracles(self):
        ref = reference_simplex(2)
        x = Polynomial.monomial((1, 0))
        assert lp_norm(x, ref, 2.0) == pytest.approx(math.sqrt(1.0 / 12.0))
        assert lp_norm(x, ref, 1.0) == pytest.approx(1.0 / 6.0)
        assert lp_norm(x, ref, math.inf) == pytest.approx(1.0)

    def test_even_integer_p_is_exact(self):
        ref = reference_simplex(2)
        x = Polynomial.monomial((1, 0))
        # int x^4 = 4!/(6!) = 1/30
        assert lp_norm(x, ref, 4.0) == pytest.approx((1.0 / 30.0) ** 0.25, rel=1e-12)

    def test_odd_p_estimates_its_error(self, rng):
        K = random_simplex(2, rng)
        v = random_polynomial(2, 3, rng) - 0.05
        val, err = lp_norm_detailed(v, K, 3.0)
        fine = lp_norm(v, K, 3.0, rule=simplex_rule(2, 30), refine=False)
        assert val == pytest.approx(fine, rel=1e-6)
        assert err < 1e-6 * max(val, 1.0)

    def test_sup_norm_interior_maximum(self):
        # -(x-1/3)^2 - (y-1/3)^2 peaks strictly inside the triangle
        x = Polynomial.monomial((1, 0)) - 1.0 / 3.0
        y = Polynomial.monomial((0, 1)) - 1.0 / 3.0
        v = 1.0 - x * x - y * y
        assert lp_norm(v, reference_simplex(2), math.inf) == pytest.approx(1.0, abs=1e-10)

    def test_norm_positive_homogeneous(self, rng):
        K = random_simplex(2, rng)
        v = random_polynomial(2, 4, rng)
        for p in (1.0, 2.0, 3.5, math.inf):
            assert lp_norm(3.0 * v, K, p) == pytest.approx(3.0 * lp_norm(v, K, p), rel=1e-9)

    def test_p_validated(self):
        with pytest.raises(ValueError):
            lp_norm(Polynomial.monomial((1, 0)), reference_simplex(2), 0.5)


class TestSeminorm:
    def test_frozen_second_order_oracles(self):
        ref = reference_simplex(2)
        x2 = Polynomial.monomial((2, 0))
        xy = Polynomial.monomial((1, 1))
        # |x^2|_{2,2}: only gamma=(2,0) contributes, weight 1, d2x = 2
        assert seminorm(x2, ref, (2, 2.0)) == pytest.approx(math.sqrt(2.0))
        # |xy|_{2,2}: gamma=(1,1) contributes, weight 2!/1!1! = 2, deriv = 1
        assert seminorm(xy, ref, (2, 2.0)) == pytest.approx(1.0)

    def test_m_zero_is_lp_norm(self, rng):
        K = random_simplex(2, rng)
        v = random_polynomial(2, 3, rng)
        assert seminorm(v, K, (0, 2.0)) == pytest.approx(lp_norm(v, K, 2.0))

    def test_inf_takes_max_over_orders(self):
        ref = reference_simplex(2)
        v = Polynomial.from_terms(2, {(2, 0): 1.0, (0, 2): 3.0})
        assert seminorm(v, ref, (2, math.inf)) == pytest.approx(6.0)

    def test_kills_low_degree(self, rng):
        K = random_simplex(3, rng)
        v = random_polynomial(3, 2, rng)
        assert seminorm(v, K, (3, 2.0)) == pytest.approx(0.0, abs=1e-14)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            SeminormSpec(-1, 2.0)
        with pytest.raises(ValueError):
            SeminormSpec(1, 0.9)
        with pytest.raises(TypeError):
            seminorm(lambda x: x[0], reference_simplex(2), (1, 2.0))

    @given(seed=st.integers(0, 10_000), m=st.integers(0, 3))
    @settings(max_examples=25, deadline=None)
    def test_decomposition_identity(self, seed, m):
        rng = np.random.default_rng(seed)
        K = random_simplex(2, rng)
        k = 3
        v = random_polynomial(2, k + 1, rng)
        assert seminorm_decomposition_gap(v, K, m, k, 2.0) < 1e-10

    @given(
        seed=st.integers(0, 10_000),
        e=st.integers(0, 10),
        m=st.integers(0, 3),
    )
    @settings(max_examples=25, deadline=None)
    def test_squeeze_transformation_identity(self, seed, e, m):
        rng = np.random.default_rng(seed)
        v = random_polynomial(2, 4, rng)
        gap = squeeze_seminorm_identity_check(v, m, 2.0, 2.0**-e)
        assert gap < 1e-10


class TestRegimeTables:
    def test_interpolation_validity(self):
        assert interpolation_p_valid(2, 1, 1.0)
        assert interpolation_p_valid(3, 2, 1.0)
        assert not interpolation_p_valid(3, 1, 1.5)
        assert interpolation_p_valid(3, 1, 2.0)

    def test_box_constraint_validity(self):
        assert box_constraint_p_valid(2, 1, 1, 1.0)
        assert box_constraint_p_valid(3, 3, 1, 1.0)
        assert not box_constraint_p_valid(3, 2, 2, 2.0)
        assert box_constraint_p_valid(3, 2, 2, 2.5)
        with pytest.raises(ValueError):
            box_constraint_p_valid(2, 2, 3, 2.0)

    def test_squeeze_bound_validity(self):
        assert squeeze_bound_p_valid(2, 1, 1, 1.0)
        assert squeeze_bound_p_valid(3, 2, 1, 2.0)
        assert not squeeze_bound_p_valid(3, 1, 1, 2.0)
        assert squeeze_bound_p_valid(3, 1, 1, 4.0)
        assert not squeeze_bound_p_valid(3, 1, 0, 1.5)
        assert squeeze_bound_p_valid(3, 1, 0, 2.0)
        with pytest.raises(ValueError):
            squeeze_bound_p_valid(2, 1, 2, 2.0)


class TestMappedSeminorm:
    def test_translation_rotation_invariance(self, rng):
        K = random_simplex(2, rng)
        v = random_polynomial(2, 3, rng)
        base = seminorm(v, K, (1, 2.0))
        shift = np.array([2.0, -1.0])
        K2 = type(K)(K.vertices + shift)
        v2 = _shifted(v, shift)
        assert seminorm(v2, K2, (1, 2.0)) == pytest.approx(base, rel=1e-10)


def _shifted(p: Polynomial, shift):
    x = Polynomial.from_terms(2, {(1, 0): 1.0, (0, 0): -shift[0]})
    y = Polynomial.from_terms(2, {(0, 1): 1.0, (0, 0): -shift[1]})
    out = Polynomial.constant(2, 0.0)
    from simplexinterp.polynomials import exponent_table

    E = exponent_table(2, p.degree)
    for e, c in zip(E, p.coeffs):
        if c != 0.0:
            out = out + float(c) * (x ** int(e[0])) * (y ** int(e[1]))
    return out
