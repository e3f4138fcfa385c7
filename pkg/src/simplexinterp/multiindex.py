"""Multi-index arithmetic: enumeration, factorials, and multinomial identities.

All combinatorics here is carried out in exact integer arithmetic.  The
lexicographic enumeration produced by :func:`enumerate_order` (and its graded
variant :func:`enumerate_upto`) is the canonical ordering used everywhere in
the package: polynomial coefficient layout, matrix rows/columns, CSV columns.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product


class MultiIndex(tuple):
    """A tuple of nonnegative integers with componentwise arithmetic.

    Supports the bookkeeping needed by lattice indexing and derivative
    calculus: the order ``|g|``, the factorial ``g!``, componentwise
    addition/subtraction, the componentwise partial order and the dot
    product.  Instances are ordinary tuples (hashable, comparable by
    lexicographic order).
    """

    __slots__ = ()

    def __new__(cls, components):
        comps = tuple(int(c) for c in components)
        if any(int(o) != o for o in components):
            raise ValueError(f"multi-index components must be integers, got {components!r}")
        if any(c < 0 for c in comps):
            raise ValueError(f"multi-index components must be nonnegative, got {comps!r}")
        return super().__new__(cls, comps)

    @property
    def order(self) -> int:
        """Total order ``|g| = g_1 + ... + g_d``."""
        return sum(self)

    @property
    def arity(self) -> int:
        return len(self)

    def factorial(self) -> int:
        """``g! = g_1! g_2! ... g_d!`` as an exact integer."""
        return math.prod(math.factorial(c) for c in self)

    def __add__(self, other):
        if len(other) != len(self):
            raise ValueError("arity mismatch in multi-index addition")
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(other) != len(self):
            raise ValueError("arity mismatch in multi-index subtraction")
        return MultiIndex(a - b for a, b in zip(self, other))

    def dominated_by(self, other) -> bool:
        """Componentwise partial order ``self <= other``."""
        if len(other) != len(self):
            raise ValueError("arity mismatch in multi-index comparison")
        return all(a <= b for a, b in zip(self, other))

    def dot(self, other) -> int:
        if len(other) != len(self):
            raise ValueError("arity mismatch in multi-index dot product")
        return sum(a * b for a, b in zip(self, other))


def zero_index(d: int) -> MultiIndex:
    return MultiIndex((0,) * d)


def unit_index(d: int, axis: int) -> MultiIndex:
    if not 0 <= axis < d:
        raise ValueError(f"axis {axis} out of range for arity {d}")
    return MultiIndex(tuple(1 if i == axis else 0 for i in range(d)))


@lru_cache(maxsize=None)
def enumerate_order(d: int, m: int) -> tuple[MultiIndex, ...]:
    """All multi-indices of arity ``d`` with total order exactly ``m``.

    Returned in ascending lexicographic order, e.g. for ``d=2, m=2``:
    ``(0,2), (1,1), (2,0)``.
    """
    if d < 1:
        raise ValueError(f"arity must be >= 1, got {d}")
    if m < 0:
        raise ValueError(f"order must be >= 0, got {m}")
    if d == 1:
        return (MultiIndex((m,)),)
    out = []
    for first in range(m + 1):
        for rest in enumerate_order(d - 1, m - first):
            out.append(MultiIndex((first,) + tuple(rest)))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_upto(d: int, max_order: int) -> tuple[MultiIndex, ...]:
    """All multi-indices with ``0 <= order <= max_order``, graded lexicographic."""
    out = []
    for m in range(max_order + 1):
        out.extend(enumerate_order(d, m))
    return tuple(out)


def multinomial_weight(m: int, gamma) -> int:
    """The multinomial coefficient ``m!/gamma!`` for ``|gamma| = m``.

    Exact integer.  Raises ``ValueError`` when ``|gamma| != m``.
    """
    g = MultiIndex(gamma)
    if g.order != m:
        raise ValueError(f"|gamma| = {g.order} does not match m = {m}")
    return math.factorial(m) // g.factorial()


def submultiindices(delta) -> tuple[MultiIndex, ...]:
    """All ``eta`` with ``0 <= eta <= delta`` componentwise, lexicographic."""
    dlt = MultiIndex(delta)
    return tuple(MultiIndex(t) for t in product(*(range(c + 1) for c in dlt)))


def split_identity_check(delta, m: int) -> bool:
    """Check the multinomial splitting of ``(k+1)!/delta!`` at level ``m``.

    With ``k + 1 = |delta|``, the left side is ``(k+1)!/delta!`` and the right
    side sums ``(m!/gamma!) ((k+1-m)!/eta!)`` over all splittings
    ``gamma + eta = delta`` with ``|gamma| = m``.  Both sides are exact
    integers; returns whether they agree.
    """
    dlt = MultiIndex(delta)
    kp1 = dlt.order
    if not 0 <= m <= kp1 - 1:
        raise ValueError(f"m must satisfy 0 <= m <= |delta| - 1, got m={m}, |delta|={kp1}")
    lhs = multinomial_weight(kp1, dlt)
    rhs = 0
    for gamma in submultiindices(dlt):
        if gamma.order != m:
            continue
        eta = dlt - gamma
        rhs += multinomial_weight(m, gamma) * multinomial_weight(kp1 - m, eta)
    return lhs == rhs
