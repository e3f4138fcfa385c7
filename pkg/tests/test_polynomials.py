import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexinterp import (
    IllConditionedElementError,
    Polynomial,
    Simplex,
    cached_basis,
    evaluate_polynomials,
    interpolate,
    lagrange_basis,
    lattice_points,
    n_coefficients,
    random_simplex,
    reference_simplex,
    squeeze,
)
from tests.conftest import random_polynomial


class TestPolynomialBasics:
    def test_monomial_eval(self):
        p = Polynomial.monomial((2, 1), 3.0)
        assert p.eval([2.0, 5.0]) == pytest.approx(3.0 * 4.0 * 5.0)
        assert p.degree == 3 and p.d == 2

    def test_from_terms_accumulates(self):
        p = Polynomial.from_terms(2, {(1, 0): 2.0, (0, 1): -1.0})
        q = Polynomial.from_terms(2, {(1, 0): 1.0, (1, 0): 1.0})  # key collapse
        assert p.eval([3.0, 4.0]) == pytest.approx(2.0)
        assert q.coeff((1, 0)) == pytest.approx(1.0)

    def test_batch_eval_shape(self, rng):
        p = random_polynomial(3, 4, rng)
        pts = rng.uniform(-1, 1, size=(17, 3))
        vals = p.eval(pts)
        assert vals.shape == (17,)
        assert vals[3] == pytest.approx(p.eval(pts[3]))

    def test_coefficient_length_validated(self):
        with pytest.raises(ValueError):
            Polynomial(2, 2, np.zeros(5))
        assert n_coefficients(2, 2) == 6

    def test_algebra(self):
        x = Polynomial.monomial((1, 0))
        y = Polynomial.monomial((0, 1))
        p = (x + y) * (x - y) - (x * x - y * y)
        assert np.allclose(p.coeffs, 0.0)
        q = (1.0 + x) ** 3
        assert q.coeff((2, 0)) == pytest.approx(3.0)
        assert (2.0 * x - 1.0).eval([0.5, 0.0]) == pytest.approx(0.0)

    def test_derivative_exact(self):
        p = Polynomial.from_terms(2, {(3, 2): 5.0, (1, 1): 2.0})
        dp = p.derivative((1, 1))
        # d/dx d/dy 5 x^3 y^2 = 30 x^2 y; cross term gives 2
        assert dp.eval([2.0, 3.0]) == pytest.approx(30.0 * 4.0 * 3.0 + 2.0)
        assert p.derivative((4, 0)).effective_degree() == 0
        with pytest.raises(ValueError):
            p.derivative((1, 0, 0))

    def test_derivative_matches_finite_difference(self, rng):
        p = random_polynomial(2, 5, rng)
        dp = p.derivative((1, 0))
        x = np.array([0.3, 0.4])
        h = 1e-6
        fd = (p.eval(x + [h, 0]) - p.eval(x - [h, 0])) / (2 * h)
        assert dp.eval(x) == pytest.approx(fd, rel=1e-7)

    def test_scaled_arguments(self):
        p = Polynomial.from_terms(2, {(2, 1): 1.0})
        q = p.scaled_arguments([2.0, 3.0])
        assert q.coeff((2, 1)) == pytest.approx(4.0 * 3.0)

    def test_effective_degree_ignores_padding(self):
        p = Polynomial(2, 4, np.zeros(n_coefficients(2, 4)))
        assert p.effective_degree() == 0
        q = Polynomial.from_terms(2, {(1, 1): 1e-14})
        assert q.effective_degree(tol=1e-12) == 0

    def test_evaluate_polynomials_batch(self, rng):
        polys = [random_polynomial(2, deg, rng) for deg in (1, 3, 4)]
        pts = rng.uniform(-1, 1, size=(9, 2))
        vals = evaluate_polynomials(polys, pts)
        assert vals.shape == (3, 9)
        for i, p in enumerate(polys):
            assert np.allclose(vals[i], p.eval(pts))


class TestLagrangeBasis:
    @pytest.mark.parametrize("d,k", [(2, 1), (2, 3), (3, 2)])
    def test_kronecker_property(self, d, k, rng):
        K = random_simplex(d, rng)
        basis = lagrange_basis(K, k)
        vals = evaluate_polynomials(basis.polys, basis.nodes)
        assert np.allclose(vals, np.eye(len(basis.polys)), atol=1e-9)

    def test_partition_of_unity(self, rng):
        K = random_simplex(2, rng)
        basis = lagrange_basis(K, 3)
        pts = rng.uniform(-1, 1, size=(25, 2))
        vals = evaluate_polynomials(basis.polys, pts)
        assert np.allclose(vals.sum(axis=0), 1.0, atol=1e-9)

    def test_squeezed_element_uses_exact_pullback(self):
        # diagonal squeeze elements bypass the conditioned solve entirely,
        # so even alpha = 2^-10 keeps the reference conditioning
        b_ref = lagrange_basis(reference_simplex(2), 4)
        b_sq = lagrange_basis(squeeze(2, 2.0**-10), 4)
        assert b_sq.cond == pytest.approx(b_ref.cond)
        vals = evaluate_polynomials(b_sq.polys, b_sq.nodes)
        assert np.allclose(vals, np.eye(len(b_sq.polys)), atol=1e-9)

    def test_pullback_agrees_with_direct_solve(self):
        K = squeeze(2, 0.5)
        basis = lagrange_basis(K, 3)
        V = np.array([[p.eval(x) for p in basis.polys] for x in lattice_points(K, 3)])
        assert np.allclose(V, np.eye(10), atol=1e-10)

    def test_flat_generic_element_rejected(self):
        K = Simplex([[0.0, 0.0], [1.0, 0.0], [0.5, 1e-11]])
        with pytest.raises(IllConditionedElementError):
            lagrange_basis(K, 4)

    def test_order_validated(self):
        with pytest.raises(ValueError):
            lagrange_basis(reference_simplex(2), 0)

    def test_cache_returns_same_object(self):
        K = reference_simplex(2)
        assert cached_basis(K, 2) is cached_basis(K, 2)


class TestInterpolate:
    @given(k=st.integers(1, 4), seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_reproduces_polynomials_up_to_k(self, k, seed):
        rng = np.random.default_rng(seed)
        K = random_simplex(2, rng)
        q = random_polynomial(2, k, rng)
        err = q - interpolate(K, k, q)
        pts = rng.uniform(-1, 1, size=(30, 2))
        scale = max(1.0, np.abs(q.eval(pts)).max())
        assert np.abs(err.eval(pts)).max() <= 1e-9 * scale

    def test_callable_input(self):
        K = reference_simplex(2)
        p = interpolate(K, 2, lambda x: x[0] ** 2)
        assert p.eval([0.5, 0.25]) == pytest.approx(0.25)

    def test_vectorized_callable_input(self):
        K = reference_simplex(2)
        p = interpolate(K, 2, lambda pts: pts[:, 0] * pts[:, 1])
        assert p.eval([0.5, 0.5]) == pytest.approx(0.25)

    def test_matches_function_at_nodes(self, rng):
        K = random_simplex(3, rng)

        def f(x):
            return math.sin(x[0]) + x[1] * x[2]

        p = interpolate(K, 3, f)
        for x in lattice_points(K, 3):
            assert p.eval(x) == pytest.approx(f(x), abs=1e-9)

    def test_nonreproduction_above_k(self):
        K = reference_simplex(2)
        q = Polynomial.monomial((2, 0))
        err = q - interpolate(K, 1, q)
        assert abs(err.eval([0.5, 0.0])) > 0.01
