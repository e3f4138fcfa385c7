"""Dense multivariate polynomials and Lagrange interpolation on simplices.

Polynomials are stored as dense coefficient vectors over the monomial basis,
ordered by the canonical graded lexicographic enumeration of exponents
(:func:`simplexinterp.multiindex.enumerate_upto`).  Interpolation operators
are built by solving the nodal Vandermonde system with dense LU; elements
that are an axis-aligned scaling of the reference simplex are instead built
on the reference element and pulled back exactly, which keeps strongly
squeezed elements well conditioned.
"""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import IllConditionedElementError
from .geometry import Simplex, lattice_nodes, require_nondegenerate
from .multiindex import MultiIndex, enumerate_upto

VANDERMONDE_COND_LIMIT = 1e12


@lru_cache(maxsize=None)
def exponent_table(d: int, degree: int) -> np.ndarray:
    E = np.array(enumerate_upto(d, degree), dtype=np.int64)
    E.setflags(write=False)
    return E


@lru_cache(maxsize=None)
def _exponent_positions(d: int, degree: int) -> dict[tuple, int]:
    return {tuple(e): i for i, e in enumerate(enumerate_upto(d, degree))}


def n_coefficients(d: int, degree: int) -> int:
    return math.comb(degree + d, d)


class Polynomial:
    """Polynomial in ``d`` variables of degree bound ``degree``."""

    __slots__ = ("d", "degree", "coeffs")

    def __init__(self, d: int, degree: int, coeffs):
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        if degree < 0:
            raise ValueError(f"degree bound must be >= 0, got {degree}")
        c = np.asarray(coeffs, dtype=float).ravel()
        if c.size != n_coefficients(d, degree):
            raise ValueError(
                f"coefficient vector has length {c.size}, expected "
                f"{n_coefficients(d, degree)} for degree {degree} in {d} variables"
            )
        self.d = d
        self.degree = degree
        self.coeffs = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, d: int, degree: int = 0) -> "Polynomial":
        return cls(d, degree, np.zeros(n_coefficients(d, degree)))

    @classmethod
    def constant(cls, d: int, value: float) -> "Polynomial":
        c = np.zeros(1)
        c[0] = value
        return cls(d, 0, c)

    @classmethod
    def monomial(cls, exponent, coeff: float = 1.0) -> "Polynomial":
        e = MultiIndex(exponent)
        c = np.zeros(n_coefficients(e.arity, e.order))
        c[_exponent_positions(e.arity, e.order)[tuple(e)]] = coeff
        return cls(e.arity, e.order, c)

    @classmethod
    def from_terms(cls, d: int, terms: dict) -> "Polynomial":
        """Build from a mapping {exponent tuple: coefficient}."""
        deg = max((sum(e) for e in terms), default=0)
        c = np.zeros(n_coefficients(d, deg))
        pos = _exponent_positions(d, deg)
        for e, v in terms.items():
            c[pos[tuple(MultiIndex(e))]] += v
        return cls(d, deg, c)

    # -- evaluation and calculus ---------------------------------------

    def eval(self, points):
        """Evaluate at one point (shape (d,)) or a batch (shape (n, d))."""
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if pts.shape[1] != self.d:
            raise ValueError(f"points have {pts.shape[1]} coordinates, expected {self.d}")
        M = _monomial_matrix(pts, self.d, self.degree)
        vals = M @ self.coeffs
        return float(vals[0]) if single else vals

    __call__ = eval

    def derivative(self, delta) -> "Polynomial":
        """Exact partial derivative of multi-order ``delta``."""
        dlt = MultiIndex(delta)
        if dlt.arity != self.d:
            raise ValueError("derivative order arity mismatch")
        if dlt.order == 0:
            return Polynomial(self.d, self.degree, self.coeffs.copy())
        if dlt.order > self.degree:
            return Polynomial.zero(self.d)
        newdeg = self.degree - dlt.order
        E = exponent_table(self.d, newdeg)
        pos = _exponent_positions(self.d, self.degree)
        out = np.zeros(E.shape[0])
        for i, e in enumerate(E):
            src = tuple(int(a) + b for a, b in zip(e, dlt))
            fac = 1
            for a, b in zip(e, dlt):
                fac *= math.factorial(int(a) + b) // math.factorial(int(a))
            out[i] = fac * self.coeffs[pos[src]]
        return Polynomial(self.d, newdeg, out)

    def scaled_arguments(self, scales) -> "Polynomial":
        """The polynomial x -> p(s_1 x_1, ..., s_d x_d); exact per coefficient."""
        s = np.asarray(scales, dtype=float)
        if s.size != self.d:
            raise ValueError("one scale per variable required")
        E = exponent_table(self.d, self.degree)
        factors = np.prod(s[None, :] ** E, axis=1)
        return Polynomial(self.d, self.degree, self.coeffs * factors)

    # -- algebra --------------------------------------------------------

    def _aligned(self, other: "Polynomial"):
        deg = max(self.degree, other.degree)
        a = np.zeros(n_coefficients(self.d, deg))
        b = np.zeros_like(a)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return deg, a, b

    def __add__(self, other):
        if isinstance(other, Polynomial):
            if other.d != self.d:
                raise ValueError("dimension mismatch")
            deg, a, b = self._aligned(other)
            return Polynomial(self.d, deg, a + b)
        return self + Polynomial.constant(self.d, float(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -float(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.d, self.degree, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if other.d != self.d:
                raise ValueError("dimension mismatch")
            deg = self.degree + other.degree
            pos = _exponent_positions(self.d, deg)
            Ea = exponent_table(self.d, self.degree)
            Eb = exponent_table(self.d, other.degree)
            out = np.zeros(n_coefficients(self.d, deg))
            nz = np.nonzero(self.coeffs)[0]
            for i in nz:
                targets = Ea[i][None, :] + Eb
                idx = [pos[tuple(t)] for t in targets]
                out[idx] += self.coeffs[i] * other.coeffs
            return Polynomial(self.d, deg, out)
        return Polynomial(self.d, self.degree, self.coeffs * float(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0 or int(n) != n:
            raise ValueError("only nonnegative integer powers")
        out = Polynomial.constant(self.d, 1.0)
        for _ in range(int(n)):
            out = out * self
        return out

    # -- inspection ------------------------------------------------------

    def coeff(self, exponent) -> float:
        e = MultiIndex(exponent)
        if e.order > self.degree:
            return 0.0
        return float(self.coeffs[_exponent_positions(self.d, self.degree)[tuple(e)]])

    def effective_degree(self, tol: float = 0.0) -> int:
        E = exponent_table(self.d, self.degree)
        orders = E.sum(axis=1)
        mask = np.abs(self.coeffs) > tol
        return int(orders[mask].max()) if mask.any() else 0

    def __repr__(self):
        nz = int(np.count_nonzero(self.coeffs))
        return f"Polynomial(d={self.d}, degree={self.degree}, terms={nz})"


def _monomial_matrix(pts: np.ndarray, d: int, degree: int) -> np.ndarray:
    """Monomial values x^e for every point and exponent; shape (n, n_coeffs)."""
    E = exponent_table(d, degree)
    powers = [pts[:, i][:, None] ** np.arange(degree + 1)[None, :] for i in range(d)]
    M = powers[0][:, E[:, 0]]
    for i in range(1, d):
        M = M * powers[i][:, E[:, i]]
    return M


def evaluate_polynomials(polys, points) -> np.ndarray:
    """Evaluate a list of same-dimension polynomials at once; shape (npolys, npts)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = polys[0].d
    deg = max(p.degree for p in polys)
    C = np.zeros((n_coefficients(d, deg), len(polys)))
    for j, p in enumerate(polys):
        if p.d != d:
            raise ValueError("dimension mismatch")
        C[: p.coeffs.size, j] = p.coeffs
    return (_monomial_matrix(pts, d, deg) @ C).T


# ---------------------------------------------------------------------------
# Lagrange interpolation
# ---------------------------------------------------------------------------


@dataclass
class LagrangeBasis:
    """Nodal basis of degree ``k`` on a simplex.

    ``coeff_matrix`` has one column per node: column j holds the monomial
    coefficients of the basis polynomial that is 1 at node j and 0 at the
    others.  ``cond`` is the 2-norm condition number of the Vandermonde
    system that produced it (of the reference system for pulled-back
    squeezed elements).
    """

    simplex: Simplex
    k: int
    indices: list[MultiIndex]
    nodes: np.ndarray
    coeff_matrix: np.ndarray
    cond: float
    _polys: list[Polynomial] | None = field(default=None, repr=False)

    @property
    def polys(self) -> list[Polynomial]:
        if self._polys is None:
            self._polys = [
                Polynomial(self.simplex.d, self.k, self.coeff_matrix[:, j])
                for j in range(self.coeff_matrix.shape[1])
            ]
        return self._polys


@lru_cache(maxsize=32)
def _reference_system(d: int, k: int):
    from .geometry import reference_simplex

    ref = reference_simplex(d)
    nodes = np.array([p for _, p in lattice_nodes(ref, k)])
    V = _monomial_matrix(nodes, d, k)
    cond = float(np.linalg.cond(V))
    C = np.linalg.solve(V, np.eye(V.shape[0]))
    return C, cond


def _diagonal_scales(K: Simplex) -> np.ndarray | None:
    """Scales s with K = diag(s) * reference simplex, or None."""
    M, b = K.affine_map()
    if np.any(b != 0.0):
        return None
    if np.any(M - np.diag(np.diagonal(M)) != 0.0):
        return None
    s = np.diagonal(M)
    if np.any(s <= 0.0):
        return None
    return np.asarray(s, dtype=float)


def lagrange_basis(K: Simplex, k: int) -> LagrangeBasis:
    """Construct the degree-``k`` nodal basis on ``K``.

    Raises :class:`IllConditionedElementError` when the nodal Vandermonde
    condition number exceeds 1e12.
    """
    require_nondegenerate(K)
    if k < 1:
        raise ValueError(f"interpolation order must be >= 1, got {k}")
    nds = lattice_nodes(K, k)
    indices = [g for g, _ in nds]
    nodes = np.array([p for _, p in nds])
    scales = _diagonal_scales(K)
    if scales is not None:
        Cref, cond = _reference_system(K.d, k)
        E = exponent_table(K.d, k)
        # pull the reference basis back through the diagonal map: exact
        factors = np.prod(scales[None, :] ** (-E.astype(float)), axis=1)
        C = Cref * factors[:, None]
        return LagrangeBasis(K, k, indices, nodes, C, cond)
    V = _monomial_matrix(nodes, K.d, k)
    cond = float(np.linalg.cond(V))
    if not np.isfinite(cond) or cond > VANDERMONDE_COND_LIMIT:
        raise IllConditionedElementError(
            f"nodal Vandermonde condition {cond:.3e} exceeds {VANDERMONDE_COND_LIMIT:.0e} "
            f"(k={k}, d={K.d})"
        )
    C = np.linalg.solve(V, np.eye(V.shape[0]))
    return LagrangeBasis(K, k, indices, nodes, C, cond)


_BASIS_CACHE: OrderedDict = OrderedDict()
_BASIS_CACHE_MAX = 512
_BASIS_CACHE_LOCK = threading.Lock()


def cached_basis(K: Simplex, k: int) -> LagrangeBasis:
    key = (k, K.d, K.vertices.tobytes())
    with _BASIS_CACHE_LOCK:
        hit = _BASIS_CACHE.get(key)
        if hit is not None:
            _BASIS_CACHE.move_to_end(key)
            return hit
    basis = lagrange_basis(K, k)
    with _BASIS_CACHE_LOCK:
        _BASIS_CACHE[key] = basis
        if len(_BASIS_CACHE) > _BASIS_CACHE_MAX:
            _BASIS_CACHE.popitem(last=False)
    return basis


def _node_values(f, nodes: np.ndarray) -> np.ndarray:
    if isinstance(f, Polynomial):
        return f.eval(nodes)
    try:
        vals = np.asarray(f(nodes), dtype=float)
        if vals.shape == (nodes.shape[0],):
            return vals
    except Exception:
        pass
    return np.array([float(f(x)) for x in nodes])


def interpolate(K: Simplex, k: int, f) -> Polynomial:
    """Degree-``k`` nodal interpolant of ``f`` on ``K``.

    ``f`` may be a :class:`Polynomial` or any callable accepting a point of
    shape (d,) (or a batch (n, d)) and returning values.
    """
    basis = cached_basis(K, k)
    vals = _node_values(f, basis.nodes)
    return Polynomial(K.d, k, basis.coeff_matrix @ vals)
