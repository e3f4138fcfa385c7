import math

import numpy as np
import pytest

from simplexinterp import (
    Simplex,
    SingularGeometryError,
    barycentric,
    geometry_report,
    jamet_angle,
    lattice_nodes,
    lattice_points,
    random_simplex,
    reference_simplex,
    refine_simplex,
    squeeze,
)

SQRT2 = math.sqrt(2.0)


class TestSimplexBasics:
    def test_reference_triangle_metrics(self):
        K = reference_simplex(2)
        assert K.diameter == pytest.approx(SQRT2)
        assert K.volume == pytest.approx(0.5)
        assert K.inradius == pytest.approx((2.0 - SQRT2) / 2.0)
        assert K.circumradius == pytest.approx(SQRT2 / 2.0)

    def test_reference_tet_metrics(self):
        K = reference_simplex(3)
        assert K.volume == pytest.approx(1.0 / 6.0)
        assert K.diameter == pytest.approx(SQRT2)
        # 3 V / (total face area), faces: three right isoceles + one equilateral
        area = 1.5 + math.sqrt(3.0) / 2.0
        assert K.inradius == pytest.approx(0.5 / area)
        # circumcenter is (1/2, 1/2, 1/2)
        assert K.circumradius == pytest.approx(math.sqrt(3.0) / 2.0)

    def test_shape_ratio_properties(self):
        K = reference_simplex(2)
        assert K.chunkiness == pytest.approx(K.diameter / K.inradius)
        assert K.semiregularity == pytest.approx(K.circumradius / K.diameter)

    def test_orientation_normalized(self):
        K = Simplex([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]])  # clockwise input
        assert K.volume > 0.0

    def test_degenerate_rejected(self):
        with pytest.raises(SingularGeometryError):
            Simplex([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        K = Simplex([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], allow_degenerate=True)
        assert K.degenerate

    def test_bad_shapes_rejected(self):
        with pytest.raises(ValueError):
            Simplex([[0.0, 0.0], [1.0, 0.0]])
        with pytest.raises(ValueError):
            Simplex(np.zeros((5, 4)))


class TestSqueeze:
    def test_identity_squeeze_is_reference(self):
        assert np.array_equal(squeeze(2, 1.0).vertices, reference_simplex(2).vertices)

    def test_squeeze_vertices(self):
        K = squeeze(2, 0.25)
        assert np.allclose(K.vertices, [[0, 0], [1, 0], [0, 0.25]])
        T = squeeze(3, 0.5, 0.25)
        assert np.allclose(T.vertices, [[0, 0, 0], [1, 0, 0], [0, 0.5, 0], [0, 0, 0.25]])

    def test_squeeze_validation(self):
        with pytest.raises(ValueError):
            squeeze(2, 0.0)
        with pytest.raises(ValueError):
            squeeze(2, 1.5)
        with pytest.raises(ValueError):
            squeeze(2, 0.5, 0.5)  # beta is a d=3 parameter
        with pytest.raises(ValueError):
            squeeze(3, 0.5)  # missing beta

    def test_needle_chunkiness_grows(self):
        c = [squeeze(2, 2.0**-e).chunkiness for e in range(0, 11)]
        assert all(b > a for a, b in zip(c, c[1:]))
        # asymptotically h/rho ~ 2/alpha
        assert c[-1] == pytest.approx(2.0 * 2.0**10, rel=1e-2)


class TestBarycentric:
    def test_reference_point(self):
        K = reference_simplex(2)
        lam = barycentric(K, np.array([0.25, 0.25]))
        assert np.allclose(lam, [0.5, 0.25, 0.25])

    def test_batch_and_partition(self, rng):
        K = random_simplex(2, rng)
        pts = rng.uniform(-1, 1, size=(40, 2))
        lam = barycentric(K, pts)
        assert lam.shape == (40, 3)
        assert np.allclose(lam.sum(axis=1), 1.0)
        # reconstruct points from the weights
        assert np.allclose(lam @ K.vertices, pts)


class TestLattice:
    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_node_count(self, d, k):
        K = reference_simplex(d)
        assert len(lattice_nodes(K, k)) == math.comb(k + d, d)

    def test_reference_nodes_are_index_over_k(self):
        K = reference_simplex(2)
        for gamma, pt in lattice_nodes(K, 3):
            assert np.allclose(pt, np.asarray(gamma, dtype=float) / 3.0)

    def test_vertices_are_nodes(self):
        K = Simplex([[1.0, 2.0], [3.0, 2.5], [1.5, 4.0]])
        pts = lattice_points(K, 2)
        for v in K.vertices:
            assert np.min(np.linalg.norm(pts - v, axis=1)) < 1e-12

    def test_nodes_inside_simplex(self, rng):
        K = random_simplex(3, rng)
        lam = barycentric(K, lattice_points(K, 4))
        assert lam.min() > -1e-12
        assert lam.max() < 1.0 + 1e-12


class TestGeometryReport:
    def test_reference_triangle(self):
        rep = geometry_report(reference_simplex(2))
        assert rep.max_angle == pytest.approx(math.pi / 2.0)
        assert rep.semiregularity == pytest.approx(0.5)
        assert not rep.degenerate
        assert rep.max_face_angle is None and rep.max_dihedral is None

    def test_reference_tet_angles(self):
        rep = geometry_report(reference_simplex(3))
        assert rep.max_face_angle == pytest.approx(math.pi / 2.0)
        assert rep.max_dihedral == pytest.approx(math.pi / 2.0)
        assert rep.max_angle == pytest.approx(math.pi / 2.0)

    def test_euclidean_orderings(self, rng):
        for d in (2, 3):
            for _ in range(10):
                rep = geometry_report(random_simplex(d, rng))
                assert 0.0 < rep.rho <= rep.h / 2.0 + 1e-12
                assert rep.h / 2.0 <= rep.R + 1e-12
                assert 0.0 < rep.theta_jamet <= math.pi / 2.0 + 1e-9

    def test_equilateral_semiregularity(self):
        K = Simplex([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
        assert geometry_report(K).semiregularity == pytest.approx(1.0 / math.sqrt(3.0))

    def test_cap_circumradius(self):
        eps = 2.0**-10
        K = Simplex([[0.0, 0.0], [1.0, 0.0], [0.5, eps]])
        rep = geometry_report(K)
        assert rep.R == pytest.approx((0.25 + eps**2) / (2.0 * eps))
        assert rep.R / rep.h > 100.0


class TestJametAngle:
    def test_reference_triangle_is_quarter_pi(self):
        assert jamet_angle(reference_simplex(2)) == pytest.approx(math.pi / 4.0, abs=5e-4)

    def test_obtuse_triangle_doubles_to_max_angle(self):
        K = Simplex([[0.0, 0.0], [1.0, 0.0], [0.5, 0.05]])
        rep = geometry_report(K)
        assert 2.0 * rep.theta_jamet == pytest.approx(rep.max_angle, abs=1e-3)

    def test_rigid_motion_invariance_2d(self):
        K = Simplex([[0.1, 0.2], [1.3, 0.4], [0.5, 1.1]])
        base = jamet_angle(K)
        c, s = math.cos(0.7), math.sin(0.7)
        Q = np.array([[c, -s], [s, c]])
        moved = Simplex(K.vertices @ Q.T + np.array([3.0, -2.0]))
        assert jamet_angle(moved) == pytest.approx(base, abs=1e-10)

    def test_rigid_motion_invariance_3d(self):
        K = Simplex([[0.0, 0.0, 0.0], [1.0, 0.1, 0.0], [0.2, 0.9, 0.1], [0.3, 0.2, 0.8]])
        base = jamet_angle(K)
        a, b = 0.4, 1.1
        Qz = np.array([[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1]])
        Qx = np.array([[1, 0, 0], [0, math.cos(b), -math.sin(b)], [0, math.sin(b), math.cos(b)]])
        moved = Simplex(K.vertices @ (Qz @ Qx).T + np.array([-1.0, 2.0, 0.5]))
        assert jamet_angle(moved) == pytest.approx(base, abs=1e-10)

    def test_needle_angle_stays_bounded_away_from_zero(self):
        # squeezing shrinks the max interior angle's complement but the
        # Jamet angle converges to pi/4-ish for the right-triangle needle
        vals = [jamet_angle(squeeze(2, 2.0**-e)) for e in (2, 6, 10)]
        assert all(v > 0.3 for v in vals)


class TestRefine:
    @pytest.mark.parametrize("d,children", [(2, 4), (3, 8)])
    def test_volume_conserved(self, d, children, rng):
        K = random_simplex(d, rng)
        parts = refine_simplex(K)
        assert len(parts) == children
        assert sum(p.volume for p in parts) == pytest.approx(K.volume)

    def test_triangle_children_halve_diameter(self):
        K = reference_simplex(2)
        for child in refine_simplex(K):
            assert child.diameter == pytest.approx(K.diameter / 2.0)

    def test_children_stay_inside_parent(self, rng):
        K = random_simplex(3, rng)
        for child in refine_simplex(K):
            lam = barycentric(K, child.vertices)
            assert lam.min() > -1e-12


class TestRandomSimplex:
    def test_shape_guarantees(self, rng):
        for d in (2, 3):
            for _ in range(20):
                K = random_simplex(d, rng)
                assert K.diameter >= 0.6
                assert K.chunkiness <= 8.0
                assert not K.degenerate

    def test_reproducible(self):
        a = random_simplex(2, np.random.default_rng(5)).vertices
        b = random_simplex(2, np.random.default_rng(5)).vertices
        assert np.array_equal(a, b)
