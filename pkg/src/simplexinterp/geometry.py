"""Simplices and their shape metrics.

Triangles (d=2) and tetrahedra (d=3) together with the quality measures used
in anisotropic interpolation error analysis: diameter h, inradius rho,
circumradius R, chunkiness h/rho, semiregularity R/h, maximum interior /
face / dihedral angles, and the Jamet max-min angle between a probe
direction and subsets of edge directions.  Also provides the uniform
lattice node sets of a given order, axis-aligned squeeze maps, and red
(uniform) refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import SingularGeometryError
from .multiindex import MultiIndex, enumerate_upto

# A simplex is treated as exactly degenerate when |volume| <= this factor
# times h^d; near-degenerate constructions are rejected unless explicitly
# allowed for metric reporting.
DEGENERACY_REL_TOL = 1e-14

_VANDERMONDE_COND_LIMIT = 1e12  # re-exported via polynomials


class Simplex:
    """A nondegenerate triangle or tetrahedron with oriented vertices.

    The constructor normalizes orientation so that the signed volume is
    positive (swapping the last two vertices when needed).  Near-degenerate
    vertex sets (|signed volume| < 1e-14 h^d) are rejected unless
    ``allow_degenerate=True``; degenerate simplices are only accepted by
    :func:`geometry_report`.
    """

    __slots__ = ("vertices", "d", "degenerate", "_diameter", "_volume")

    def __init__(self, vertices, allow_degenerate: bool = False):
        V = np.array(vertices, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] + 1 or V.shape[1] not in (2, 3):
            raise ValueError(
                f"expected (d+1, d) vertex array with d in {{2, 3}}, got shape {V.shape}"
            )
        d = V.shape[1]
        signed = _signed_volume(V)
        if signed < 0:
            V = V[[0, 2, 1]] if d == 2 else V[[0, 1, 3, 2]]
            signed = -signed
        diffs = V[:, None, :] - V[None, :, :]
        h = float(np.sqrt((diffs**2).sum(axis=2)).max())
        degenerate = signed <= DEGENERACY_REL_TOL * h**d
        if degenerate and not allow_degenerate:
            raise SingularGeometryError(
                f"simplex volume {signed:.3e} below degeneracy threshold "
                f"{DEGENERACY_REL_TOL * h ** d:.3e}; pass allow_degenerate=True "
                "for metric reporting only"
            )
        V.setflags(write=False)
        self.vertices = V
        self.d = d
        self.degenerate = bool(degenerate)
        self._diameter = h
        self._volume = signed

    @property
    def diameter(self) -> float:
        """Longest edge length h."""
        return self._diameter

    @property
    def volume(self) -> float:
        return self._volume

    @property
    def inradius(self) -> float:
        """Radius of the inscribed ball (0 for a degenerate simplex)."""
        if self.degenerate:
            return 0.0
        if self.d == 2:
            per = sum(self.edge_lengths())
            return 2.0 * self._volume / per
        areas = [_triangle_area(self.vertices[list(f)]) for f in combinations(range(4), 3)]
        return 3.0 * self._volume / sum(areas)

    @property
    def circumradius(self) -> float:
        """Radius of the circumscribed ball (inf when the vertices admit none)."""
        V = self.vertices
        A = 2.0 * (V[1:] - V[0])
        rhs = (V[1:] ** 2).sum(axis=1) - (V[0] ** 2).sum()
        try:
            c = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError:
            return math.inf
        if not np.all(np.isfinite(c)):
            return math.inf
        return float(np.linalg.norm(c - V[0]))

    @property
    def chunkiness(self) -> float:
        rho = self.inradius
        return math.inf if rho == 0.0 else self._diameter / rho

    @property
    def semiregularity(self) -> float:
        return self.circumradius / self._diameter

    def edges(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.d + 1), 2))

    def edge_vectors(self) -> np.ndarray:
        return np.array([self.vertices[j] - self.vertices[i] for i, j in self.edges()])

    def edge_lengths(self) -> list[float]:
        return [float(np.linalg.norm(e)) for e in self.edge_vectors()]

    def affine_map(self) -> tuple[np.ndarray, np.ndarray]:
        """Matrix M and offset b with x = b + M xi mapping the reference simplex here."""
        M = (self.vertices[1:] - self.vertices[0]).T
        return M, self.vertices[0].copy()

    def barycentric_transform(self) -> np.ndarray:
        """Matrix T (d+1, d+1) with lambda(x) = T @ [1, x]."""
        A = np.vstack([np.ones(self.d + 1), self.vertices.T])
        return np.linalg.inv(A)

    def __repr__(self):
        return f"Simplex(d={self.d}, vertices={self.vertices.tolist()})"


def _signed_volume(V: np.ndarray) -> float:
    M = V[1:] - V[0]
    return float(np.linalg.det(M)) / math.factorial(V.shape[1])


def _triangle_area(P: np.ndarray) -> float:
    u, v = P[1] - P[0], P[2] - P[0]
    if P.shape[1] == 2:
        return abs(u[0] * v[1] - u[1] * v[0]) / 2.0
    return float(np.linalg.norm(np.cross(u, v))) / 2.0


def reference_simplex(d: int) -> Simplex:
    """Unit reference simplex with vertices at the origin and the standard basis."""
    if d not in (2, 3):
        raise ValueError(f"d must be 2 or 3, got {d}")
    V = np.zeros((d + 1, d))
    for i in range(d):
        V[i + 1, i] = 1.0
    return Simplex(V)


def squeeze(d: int, alpha: float, beta: float | None = None) -> Simplex:
    """Axis-aligned squeeze of the reference simplex.

    d=2 gives vertices (0,0), (1,0), (0,alpha); d=3 gives (0,0,0), (1,0,0),
    (0,alpha,0), (0,0,beta).  Scales must lie in (0, 1].
    """
    if d not in (2, 3):
        raise ValueError(f"d must be 2 or 3, got {d}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if d == 2:
        if beta is not None:
            raise ValueError("beta is only meaningful for d=3")
        return Simplex([[0.0, 0.0], [1.0, 0.0], [0.0, alpha]])
    if beta is None:
        raise ValueError("beta is required for d=3")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")
    return Simplex([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, alpha, 0.0], [0.0, 0.0, beta]])


def require_nondegenerate(K: Simplex) -> None:
    if K.degenerate:
        raise SingularGeometryError(
            "degenerate simplices are only accepted by geometry_report"
        )


def barycentric(K: Simplex, x) -> np.ndarray:
    """Barycentric coordinates of point(s) ``x`` with respect to ``K``.

    Accepts a single point of shape (d,) or a batch of shape (n, d); returns
    shape (d+1,) or (n, d+1) accordingly.  Coordinates sum to one exactly up
    to roundoff; they are negative outside the simplex.
    """
    require_nondegenerate(K)
    T = K.barycentric_transform()
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    aug = np.hstack([np.ones((pts.shape[0], 1)), pts])
    lam = aug @ T.T
    return lam[0] if single else lam


def lattice_nodes(K: Simplex, k: int) -> list[tuple[MultiIndex, np.ndarray]]:
    """The uniform interpolation nodes of order ``k`` with their lattice indices.

    Indices ``gamma`` have arity d and run over ``0 <= |gamma| <= k`` in graded
    lexicographic order; the node of index ``gamma`` sits at barycentric
    coordinates ``((k - |gamma|)/k, gamma_1/k, ..., gamma_d/k)``.  On the
    reference simplex that is the point ``gamma / k``.
    """
    require_nondegenerate(K)
    if k < 1:
        raise ValueError(f"lattice order must be >= 1, got {k}")
    indices = enumerate_upto(K.d, k)
    M, b = K.affine_map()
    pts = (np.array(indices, dtype=float) / k) @ M.T + b
    return [(g, pts[i]) for i, g in enumerate(indices)]


def lattice_points(K: Simplex, k: int) -> np.ndarray:
    """Node coordinates only, shape (binom(k+d, d), d), in the canonical order."""
    return np.array([p for _, p in lattice_nodes(K, k)])


@dataclass(frozen=True)
class GeometryReport:
    """Shape metrics of a simplex.

    ``max_angle`` is the largest interior angle for d=2 and the larger of
    the two angle families for d=3, where ``max_face_angle`` and
    ``max_dihedral`` are also reported separately.  Angles are radians.
    """

    d: int
    h: float
    rho: float
    R: float
    max_angle: float
    theta_jamet: float
    chunkiness: float
    semiregularity: float
    degenerate: bool
    max_face_angle: float | None = None
    max_dihedral: float | None = None


def _interior_angles_2d(V: np.ndarray) -> list[float]:
    out = []
    for i in range(3):
        u = V[(i + 1) % 3] - V[i]
        v = V[(i + 2) % 3] - V[i]
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if nu == 0.0 or nv == 0.0:
            out.append(0.0)
            continue
        c = np.clip(u @ v / (nu * nv), -1.0, 1.0)
        out.append(float(np.arccos(c)))
    return out


def _dihedral_angles_3d(V: np.ndarray) -> list[float]:
    # For each edge (i, j): angle between the half-planes toward the two
    # opposite vertices, measured after removing the edge component.
    out = []
    for i, j in combinations(range(4), 2):
        rest = [r for r in range(4) if r not in (i, j)]
        t = V[j] - V[i]
        nt = np.linalg.norm(t)
        if nt == 0.0:
            out.append(0.0)
            continue
        t = t / nt
        u = V[rest[0]] - V[i]
        v = V[rest[1]] - V[i]
        u = u - (u @ t) * t
        v = v - (v @ t) * t
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if nu == 0.0 or nv == 0.0:
            out.append(0.0)
            continue
        c = np.clip(u @ v / (nu * nv), -1.0, 1.0)
        out.append(float(np.arccos(c)))
    return out


def geometry_report(K: Simplex) -> GeometryReport:
    """All shape metrics of ``K``; the only consumer of degenerate simplices."""
    V = K.vertices
    h = K.diameter
    rho = K.inradius
    R = K.circumradius
    if K.d == 2:
        max_angle = max(_interior_angles_2d(V))
        face = dihedral = None
    else:
        face = max(
            max(_interior_angles_2d(V[list(f)])) for f in combinations(range(4), 3)
        )
        dihedral = max(_dihedral_angles_3d(V))
        max_angle = max(face, dihedral)
    return GeometryReport(
        d=K.d,
        h=h,
        rho=rho,
        R=R,
        max_angle=max_angle,
        theta_jamet=jamet_angle(K),
        chunkiness=K.chunkiness,
        semiregularity=R / h,
        degenerate=K.degenerate,
        max_face_angle=face,
        max_dihedral=dihedral,
    )


# ---------------------------------------------------------------------------
# Jamet max-min angle
#
# theta(E) for a set E of d independent edge directions is the largest, over
# probe directions xi, of the smallest angle between xi and the lines spanned
# by the members of E; theta_K minimizes theta(E) over all independent
# d-subsets of the N = d(d+1)/2 edge directions.  The search runs on a grid
# anchored to the element (angles relative to the first edge for d=2, a
# Gram-Schmidt frame of the first edges for d=3) so that reports are
# invariant under rigid motions, then polishes every near-optimal candidate
# locally down to ``refine_step``.
# ---------------------------------------------------------------------------


def jamet_angle(K: Simplex, coarse_step: float = 1e-2, refine_step: float = 1e-4) -> float:
    dirs = K.edge_vectors()
    lens = np.linalg.norm(dirs, axis=1)
    keep = lens > 0.0
    dirs = dirs[keep] / lens[keep, None]
    if K.d == 2:
        return _jamet_2d(dirs, coarse_step, refine_step)
    return _jamet_3d(dirs, coarse_step, refine_step)


def _line_dist(a, b):
    """Distance between lines given by angles a, b (mod pi), in [0, pi/2]."""
    d = np.abs(a - b) % np.pi
    return np.minimum(d, np.pi - d)


def _jamet_2d(dirs: np.ndarray, coarse: float, fine: float) -> float:
    ang = np.arctan2(dirs[:, 1], dirs[:, 0]) % np.pi
    rel = (ang - ang[0]) % np.pi  # anchor the grid to the first edge
    best_overall = np.pi / 2
    for i, j in combinations(range(len(rel)), 2):
        pair = np.array([rel[i], rel[j]])
        if _line_dist(pair[0], pair[1]) < 1e-9:
            continue  # parallel edges span no independent pair
        grid = np.arange(0.0, np.pi, coarse)
        vals = _line_dist(grid[:, None], pair[None, :]).min(axis=1)
        best = float(vals.max())
        for c in _near_optimal_1d(grid, vals, best, 2.0 * coarse):
            local = c + np.arange(-1.5 * coarse, 1.5 * coarse + fine / 2, fine)
            lv = _line_dist(local[:, None], pair[None, :]).min(axis=1)
            best = max(best, float(lv.max()))
        best_overall = min(best_overall, min(best, np.pi / 2))
    return best_overall


def _near_optimal_1d(grid, vals, best, margin, cap=16):
    cand = grid[vals >= best - margin]
    picked = []
    for c in cand[np.argsort(-vals[vals >= best - margin])]:
        if all(_line_dist(c, p) > margin for p in picked):
            picked.append(float(c))
        if len(picked) >= cap:
            break
    return picked


def _fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n)
    z = 1.0 - 2.0 * (i + 0.5) / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, 1.0))
    phi = i * (np.pi * (3.0 - np.sqrt(5.0)))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _jamet_3d(dirs: np.ndarray, coarse: float, fine: float) -> float:
    u1 = dirs[0]
    u2 = None
    for v in dirs[1:]:
        w = v - (v @ u1) * u1
        n = np.linalg.norm(w)
        if n > 1e-8:
            u2 = w / n
            break
    if u2 is None:
        return np.pi / 2  # all edges parallel: no independent triple exists
    u3 = np.cross(u1, u2)
    frame = np.stack([u1, u2, u3], axis=1)
    L = dirs @ frame  # edge directions in the anchored frame

    npts = int(np.ceil(9.0 / coarse**2))
    P = _fibonacci_sphere(npts)
    cosmat = np.abs(P @ L.T)

    best_overall = np.pi / 2
    for sub in combinations(range(len(L)), 3):
        M = L[list(sub)]
        if abs(np.linalg.det(M)) < 1e-9:
            continue
        vals = np.arccos(np.clip(cosmat[:, sub].max(axis=1), -1.0, 1.0))
        best = float(vals.max())
        order = np.argsort(-vals)
        picked: list[np.ndarray] = []
        for idx in order:
            if vals[idx] < best - 2.0 * coarse:
                break
            p = P[idx]
            if all(np.linalg.norm(p - q) > 2.0 * coarse and np.linalg.norm(p + q) > 2.0 * coarse
                   for q in picked):
                picked.append(p)
            if len(picked) >= 12:
                break
        for p in picked:
            best = max(best, _polish_direction(p, M, 2.0 * coarse, fine))
        best_overall = min(best_overall, min(best, np.pi / 2))
    return best_overall


def _polish_direction(p: np.ndarray, M: np.ndarray, window: float, fine: float) -> float:
    best = -1.0
    center = p / np.linalg.norm(p)
    w = window
    while True:
        t1 = np.cross(center, [1.0, 0.0, 0.0])
        if np.linalg.norm(t1) < 1e-6:
            t1 = np.cross(center, [0.0, 1.0, 0.0])
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(center, t1)
        a = np.linspace(-w, w, 21)
        A, B = np.meshgrid(a, a, indexing="ij")
        pts = center + A.ravel()[:, None] * t1 + B.ravel()[:, None] * t2
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        vals = np.arccos(np.clip(np.abs(pts @ M.T).max(axis=1), -1.0, 1.0))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            center = pts[i]
        if w / 10.0 < fine / 2.0:
            break
        w /= 5.0
    return best


# ---------------------------------------------------------------------------
# Refinement and random generation
# ---------------------------------------------------------------------------


def refine_simplex(K: Simplex) -> list[Simplex]:
    """Uniform (red) refinement into 4 triangles or 8 tetrahedra."""
    V = K.vertices
    if K.d == 2:
        m01 = (V[0] + V[1]) / 2
        m12 = (V[1] + V[2]) / 2
        m02 = (V[0] + V[2]) / 2
        quads = [
            (V[0], m01, m02),
            (m01, V[1], m12),
            (m02, m12, V[2]),
            (m01, m12, m02),
        ]
    else:
        m = {(i, j): (V[i] + V[j]) / 2 for i, j in combinations(range(4), 2)}
        quads = [
            (V[0], m[0, 1], m[0, 2], m[0, 3]),
            (m[0, 1], V[1], m[1, 2], m[1, 3]),
            (m[0, 2], m[1, 2], V[2], m[2, 3]),
            (m[0, 3], m[1, 3], m[2, 3], V[3]),
            (m[0, 1], m[0, 2], m[0, 3], m[1, 3]),
            (m[0, 1], m[0, 2], m[1, 2], m[1, 3]),
            (m[0, 2], m[0, 3], m[1, 3], m[2, 3]),
            (m[0, 2], m[1, 2], m[1, 3], m[2, 3]),
        ]
    return [Simplex(np.array(q)) for q in quads]


def random_simplex(
    d: int,
    rng: np.random.Generator,
    max_chunkiness: float = 8.0,
    min_diameter: float = 0.6,
) -> Simplex:
    """A random well-shaped simplex with vertices in [-1, 1]^d (rejection sampled)."""
    for _ in range(10_000):
        V = rng.uniform(-1.0, 1.0, size=(d + 1, d))
        try:
            K = Simplex(V)
        except SingularGeometryError:
            continue
        if K.diameter >= min_diameter and K.chunkiness <= max_chunkiness:
            return K
    raise RuntimeError("failed to sample a well-shaped simplex")
