"""Difference quotients on the simplex lattice and their box-integral twins.

For a lattice of order ``k`` on the reference simplex, the difference
quotient of extent ``delta`` anchored at index ``gamma`` is

    k^{|delta|} * sum_{eta <= delta} (-1)^{|delta|-|eta|} / (eta! (delta-eta)!) * f(x_{gamma+eta})

with nodes ``x_g = g / k``.  The matching "box" is the axis-aligned cell
with corners ``x_gamma`` and ``x_{gamma+delta}`` over which the same
quantity equals an iterated-simplex integral of the ``delta``-th
derivative (per axis: a B-spline weighted 1D integral of the sum
coordinate); a function that vanishes at every lattice node therefore has
all its box integrals of derivatives equal to zero.  Coefficients are
accumulated as exact rationals and scaled by ``k^{|delta|}`` once at the
end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import OutOfLatticeError
from .multiindex import MultiIndex, enumerate_upto, submultiindices, unit_index
from .polynomials import Polynomial
from .geometry import Simplex, reference_simplex


def shift_node(gamma, delta, k: int) -> MultiIndex:
    """Shifted lattice index ``gamma + delta``; must stay within order ``k``."""
    g = MultiIndex(gamma)
    dlt = MultiIndex(delta)
    out = g + dlt
    if out.order > k:
        raise OutOfLatticeError(
            f"index {tuple(out)} has order {out.order} > k = {k}"
        )
    return out


def lattice_coordinate(gamma, k: int) -> np.ndarray:
    """Reference-simplex coordinates of the lattice node with index ``gamma``."""
    return np.asarray(MultiIndex(gamma), dtype=float) / k


@dataclass(frozen=True)
class Box:
    """Anchored integration cell of extent ``delta`` at lattice index ``gamma``."""

    k: int
    gamma: MultiIndex
    delta: MultiIndex

    def __post_init__(self):
        g, dlt = MultiIndex(self.gamma), MultiIndex(self.delta)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "delta", dlt)
        if g.arity != dlt.arity:
            raise ValueError("anchor and extent arity mismatch")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if dlt.order < 1:
            raise ValueError("box extent must have order >= 1")
        if g.order + dlt.order > self.k:
            raise OutOfLatticeError(
                f"box (gamma={tuple(g)}, delta={tuple(dlt)}) leaves the order-{self.k} lattice"
            )

    @property
    def d(self) -> int:
        return self.gamma.arity


def enumerate_boxes(k: int, delta, d: int) -> list[Box]:
    """All boxes of extent ``delta``: anchors with ``|gamma| <= k - |delta|``.

    The count equals binom(k - |delta| + d, d), the dimension of the
    polynomial space of degree k - |delta| in d variables.
    """
    dlt = MultiIndex(delta)
    if dlt.arity != d:
        raise ValueError("delta arity must equal d")
    if not 1 <= dlt.order <= k:
        raise ValueError(f"need 1 <= |delta| <= k, got |delta|={dlt.order}, k={k}")
    return [Box(k, g, dlt) for g in enumerate_upto(d, k - dlt.order)]


def _f_at(f, pt: np.ndarray) -> float:
    if isinstance(f, Polynomial):
        return float(f.eval(pt))
    return float(f(pt))


def diff_quotient(f, k: int, gamma, delta) -> float:
    """Direct-sum difference quotient of extent ``delta`` anchored at ``gamma``."""
    g = MultiIndex(gamma)
    dlt = MultiIndex(delta)
    if dlt.order < 1:
        raise ValueError("delta must have order >= 1")
    shift_node(g, dlt, k)  # validates the whole stencil fits
    acc = Fraction(0)
    for eta in submultiindices(dlt):
        w = Fraction((-1) ** (dlt.order - eta.order), eta.factorial() * (dlt - eta).factorial())
        acc += w * Fraction(_f_at(f, lattice_coordinate(g + eta, k)))
    return float(acc * k**dlt.order)


def diff_quotient_recursive(f, k: int, gamma, delta, eta) -> float:
    """Recursive form: split off the unit direction ``eta`` first.

    Requires ``|eta| = 1`` and ``eta <= delta``.  Deeper levels split off the
    first admissible unit direction; the recursion bottoms out at plain node
    evaluation.  Agrees with :func:`diff_quotient` up to roundoff.
    """
    g = MultiIndex(gamma)
    dlt = MultiIndex(delta)
    e = MultiIndex(eta)
    if e.order != 1 or not e.dominated_by(dlt):
        raise ValueError("eta must be a unit index with eta <= delta")
    shift_node(g, dlt, k)
    return _dq_recurse(f, k, g, dlt, e)


def _dq_recurse(f, k: int, gamma: MultiIndex, delta: MultiIndex, eta: MultiIndex) -> float:
    if delta.order == 0:
        return _f_at(f, lattice_coordinate(gamma, k))
    rest = delta - eta
    nxt = None
    if rest.order > 0:
        axis = next(i for i, c in enumerate(rest) if c > 0)
        nxt = unit_index(delta.arity, axis)
    upper = _dq_recurse(f, k, gamma + eta, rest, nxt)
    lower = _dq_recurse(f, k, gamma, rest, nxt)
    return k / delta.dot(eta) * (upper - lower)


# ---------------------------------------------------------------------------
# Box integrals
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _axis_gauss(extent: int, quad_order: int):
    """Nodes/weights on [0, extent] against the sum-coordinate weight.

    Along an axis of extent n the box integral reduces to a 1D integral of
    the sum psi = w_1 + ... + w_n over the ordered simplex
    {1 >= w_1 >= ... >= w_n >= 0}; the density of psi is the cardinal
    B-spline of order n divided by n! (total mass 1/n!).  The density is
    polynomial of degree n-1 between consecutive integers, so Gauss nodes
    per unit piece keep exactness for polynomial integrands of degree
    ``quad_order``.
    """
    n = extent
    npts = math.ceil((quad_order + n) / 2) + 1
    x, w = np.polynomial.legendre.leggauss(npts)
    x01 = (x + 1.0) / 2.0
    w01 = w / 2.0
    scale = math.factorial(n - 1) * math.factorial(n)
    nodes, wts = [], []
    for piece in range(n):
        psi = piece + x01
        dens = np.zeros_like(psi)
        for i in range(piece + 1):
            dens += (-1) ** i * math.comb(n, i) * (psi - i) ** (n - 1)
        nodes.append(psi)
        wts.append(w01 * dens / scale)
    return np.concatenate(nodes), np.concatenate(wts)


@lru_cache(maxsize=None)
def _box_grid(delta: MultiIndex, quad_order: int):
    """Tensor grid offsets (npts, d) and weights for a box of extent delta."""
    active = [i for i, n in enumerate(delta) if n > 0]
    axes = [_axis_gauss(delta[i], quad_order) for i in active]
    grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    npts = grids[0].size
    offs = np.zeros((npts, len(delta)))
    for pos, i in enumerate(active):
        offs[:, i] = grids[pos].ravel()
    wts = np.ones(npts)
    for wg in wgrids:
        wts = wts * wg.ravel()
    return offs, wts


def box_integral(v, box: Box, quad_order: int = 10) -> float:
    """Iterated-simplex integral of ``v`` over an anchored box.

    Axes with extent n >= 1 integrate the sum coordinate against the
    order-n B-spline density of mass 1/n! on [0, n] (lattice units, i.e.
    the physical span is n/k); axes with extent 0 stay fixed at the anchor
    coordinate.  For v == c the value is c / delta!.  Exact for polynomial
    v of degree <= quad_order along every active axis.
    """
    offs, wts = _box_grid(box.delta, quad_order)
    pts = lattice_coordinate(box.gamma, box.k)[None, :] + offs / box.k
    if isinstance(v, Polynomial):
        vals = v.eval(pts)
    else:
        vals = np.asarray(v(pts), dtype=float)
        if vals.shape != (pts.shape[0],):
            vals = np.array([float(v(x)) for x in pts])
    return float(wts @ vals)


def box_integrals_for_extent(v, k: int, delta, quad_order: int = 10):
    """Boxes and their integrals for every admissible anchor, vectorized."""
    dlt = MultiIndex(delta)
    boxes = enumerate_boxes(k, dlt, dlt.arity)
    offs, wts = _box_grid(dlt, quad_order)
    anchors = np.array([lattice_coordinate(b.gamma, k) for b in boxes])
    pts = anchors[:, None, :] + offs[None, :, :] / k
    flat = pts.reshape(-1, dlt.arity)
    if isinstance(v, Polynomial):
        vals = v.eval(flat)
    else:
        vals = np.asarray(v(flat), dtype=float)
        if vals.shape != (flat.shape[0],):
            vals = np.array([float(v(x)) for x in flat])
    vals = vals.reshape(len(boxes), -1)
    return boxes, vals @ wts


def integral_representation_check(f: Polynomial, k: int, gamma, delta,
                                  quad_order: int = 10) -> float:
    """Relative gap between the difference quotient and the box integral of D^delta f."""
    if not isinstance(f, Polynomial):
        raise TypeError("the representation check needs exact derivatives; pass a Polynomial")
    dq = diff_quotient(f, k, gamma, delta)
    bi = box_integral(f.derivative(delta), Box(k, MultiIndex(gamma), MultiIndex(delta)),
                      quad_order=max(quad_order, f.degree))
    return abs(dq - bi) / max(abs(dq), abs(bi), 1.0)


def annihilation_residuals(v: Polynomial, K: Simplex, k: int,
                           quad_order: int = 10) -> dict[MultiIndex, float]:
    """Max |box integral of D^delta (v - I_k v)| per extent delta.

    The boxes live on the reference simplex, which ``K`` must be.  Residuals
    are normalized by the largest |v| over the interpolation nodes (floored
    at 1).  A nodal interpolation residual makes every entry vanish.
    """
    from .polynomials import interpolate, cached_basis

    ref = reference_simplex(K.d)
    if not np.array_equal(K.vertices, ref.vertices):
        raise ValueError("box integrals are defined on the reference simplex")
    if not isinstance(v, Polynomial):
        raise TypeError("pass the probe as a Polynomial")
    u = v - interpolate(K, k, v)
    scale = max(1.0, float(np.abs(v.eval(cached_basis(K, k).nodes)).max()))
    out: dict[MultiIndex, float] = {}
    qo = max(quad_order, v.degree)
    for order in range(1, k + 1):
        for dlt in _extents(K.d, order):
            _, vals = box_integrals_for_extent(u.derivative(dlt), k, dlt, qo)
            out[dlt] = float(np.abs(vals).max()) / scale
    return out


@lru_cache(maxsize=None)
def _extents(d: int, order: int):
    from .multiindex import enumerate_order

    return enumerate_order(d, order)


def annihilation_check(v: Polynomial, K: Simplex, k: int, quad_order: int = 10) -> float:
    """Largest normalized box-integral residual over all extents and anchors."""
    return max(annihilation_residuals(v, K, k, quad_order).values())


def box_moment_matrix(k: int, delta, d: int, quad_order: int | None = None):
    """Box integrals of the monomials of degree <= k - |delta|, plus sigma_min.

    Rows follow the box enumeration, columns the graded-lex monomials; the
    matrix is square and its smallest singular value (computed by one-sided
    Jacobi, see :mod:`simplexinterp.eigen`) is returned alongside.
    """
    from .eigen import sigma_min_one_sided_jacobi

    dlt = MultiIndex(delta)
    boxes = enumerate_boxes(k, dlt, d)
    exps = enumerate_upto(d, k - dlt.order)
    qo = quad_order if quad_order is not None else max(2 * k, 4)
    M = np.zeros((len(boxes), len(exps)))
    for j, e in enumerate(exps):
        _, vals = box_integrals_for_extent(Polynomial.monomial(e), k, dlt, qo)
        M[:, j] = vals
    return M, sigma_min_one_sided_jacobi(M)
