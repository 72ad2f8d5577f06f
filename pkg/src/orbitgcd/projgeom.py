"""Projective points over Q and rational self-maps of P^N.

Points are stored in the canonical representative: integer homogeneous
coordinates with gcd 1 whose first nonzero entry is positive.  Maps are
tuples of N+1 homogeneous polynomials of one common degree, reduced so
that the components share no polynomial factor; evaluation at a point
either produces the image point or signals indeterminacy when every
component vanishes (the set-theoretic base locus of the reduced tuple).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import poly
from .poly import BigPoly

Coords = Tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """Iterate degree went past the configured composition budget."""


DEFAULT_DEGREE_BUDGET = 3 ** 6


@dataclass(frozen=True)
class ProjPoint:
    """Primitive, sign-canonical homogeneous coordinates."""
    coords: Coords

    @property
    def arity(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


def make_point(raw: Sequence[int]) -> ProjPoint:
    """Canonical representative of the projective point with these coordinates."""
    coords = [int(c) for c in raw]
    if len(coords) < 2:
        raise ValueError("a projective point needs at least two coordinates")
    g = 0
    for c in coords:
        g = math.gcd(g, c)
    if g == 0:
        raise ValueError("all coordinates are zero")
    coords = [c // g for c in coords]
    for c in coords:
        if c != 0:
            if c < 0:
                coords = [-x for x in coords]
            break
    return ProjPoint(tuple(coords))


@dataclass(frozen=True)
class RationalMap:
    """Reduced tuple of N+1 homogeneous components of common degree."""
    components: Tuple[BigPoly, ...]
    degree: int

    @property
    def arity(self) -> int:
        return self.components[0].arity


@dataclass(frozen=True)
class SubschemeIdeal:
    """Homogeneous generators of the ideal cutting out the target Y."""
    generators: Tuple[BigPoly, ...]

    @property
    def arity(self) -> int:
        return self.generators[0].arity


def make_ideal(generators: Sequence[BigPoly]) -> SubschemeIdeal:
    gens = tuple(generators)
    if not gens:
        raise ValueError("ideal needs at least one generator")
    arity = gens[0].arity
    for i, g in enumerate(gens):
        if g.arity != arity:
            raise ValueError("generator %d has mismatched arity" % i)
        ok, d = poly.is_homogeneous(g)
        if not ok:
            raise ValueError("generator %d is not homogeneous" % i)
        if d is None or d < 1:
            raise ValueError("generator %d must be nonzero of degree >= 1" % i)
    return SubschemeIdeal(gens)


def make_map(components: Sequence[BigPoly]) -> RationalMap:
    """Reduce the component tuple and record the reduced degree.

    Components are divided by their common polynomial gcd (folded pairwise,
    monomial-light components first so the fold stays cheap) and then by
    their common integer content.  The result is sign-canonical: the first
    nonzero component has positive leading coefficient.
    """
    comps = list(components)
    if len(comps) < 2:
        raise ValueError("a map of P^N needs at least two components")
    arity = comps[0].arity
    if len(comps) != arity:
        raise ValueError("expected %d components for arity %d, got %d"
                         % (arity, arity, len(comps)))
    common_deg: Optional[int] = None
    for i, c in enumerate(comps):
        if c.arity != arity:
            raise ValueError("component %d has mismatched arity" % i)
        ok, d = poly.is_homogeneous(c)
        if not ok:
            raise ValueError("component %d is not homogeneous" % i)
        if d is not None:
            if common_deg is not None and d != common_deg:
                raise ValueError("component degrees differ: %d vs %d"
                                 % (common_deg, d))
            common_deg = d
    if common_deg is None:
        raise ValueError("all components are zero")
    if common_deg < 1:
        raise ValueError("component degree must be >= 1")

    order = sorted(range(len(comps)), key=lambda i: (len(comps[i].terms) or 1,
                                                     poly.degree(comps[i]) or 0))
    g: Optional[BigPoly] = None
    for i in order:
        if not comps[i].terms:
            continue
        g = comps[i] if g is None else poly.gcd_multivar(g, comps[i])
        if poly.degree(g) == 0:
            break
    assert g is not None
    if poly.degree(g) and poly.degree(g) > 0:
        reduced = []
        for c in comps:
            q = poly.div_exact(c, g)
            if q is None:
                raise AssertionError("component not divisible by common gcd")
            reduced.append(q)
        comps = reduced

    ic = 0
    for c in comps:
        ic = math.gcd(ic, poly.content(c))
        if ic == 1:
            break
    if ic > 1:
        comps = [poly.BigPoly(arity, {e: v // ic for e, v in c.terms.items()})
                 for c in comps]

    for c in comps:
        if c.terms:
            if poly.leading_term(c)[1] < 0:
                comps = [poly.neg(x) for x in comps]
            break

    _, deg = poly.is_homogeneous(next(c for c in comps if c.terms))
    assert deg is not None
    return RationalMap(tuple(comps), deg)


def apply(f: RationalMap, x: ProjPoint) -> Optional[ProjPoint]:
    """Image of x under f, or None when x is in the base locus."""
    if f.arity != x.arity:
        raise ValueError("map arity %d vs point arity %d" % (f.arity, x.arity))
    values = [poly.eval_int(c, x.coords) for c in f.components]
    if all(v == 0 for v in values):
        return None
    return make_point(values)


def iterate_map(f: RationalMap, n: int,
                budget: int = DEFAULT_DEGREE_BUDGET) -> RationalMap:
    """Reduced representation of the n-th iterate.

    Raises BudgetExceeded when the raw degree of the next composition
    (deg current * deg f, before reduction) would pass the budget.
    """
    if n < 1:
        raise ValueError("iterate count must be >= 1")
    current = f
    for _ in range(n - 1):
        if current.degree * f.degree > budget:
            raise BudgetExceeded(
                "raw degree %d exceeds budget %d"
                % (current.degree * f.degree, budget))
        composed = [poly.compose(c, current.components) for c in f.components]
        current = make_map(composed)
    return current


@dataclass
class OrbitResult:
    """Forward orbit with truncation and periodicity flags.

    points holds the orbit members f^0(x)..f^k(x) that sit outside the
    base locus; a member inside the base locus is never emitted, and
    indeterminate_at records its index (so a start point in the base locus
    yields an empty orbit with indeterminate_at = 0).  period_start is the
    index whose point reappeared, ending the orbit early.
    """
    points: List[ProjPoint] = field(default_factory=list)
    indeterminate_at: Optional[int] = None
    periodic: bool = False
    period_start: Optional[int] = None


def orbit(f: RationalMap, x0: ProjPoint, n_max: int) -> OrbitResult:
    """Successive images of x0, stopping at n_max, indeterminacy, or a cycle."""
    if f.arity != x0.arity:
        raise ValueError("map arity %d vs point arity %d" % (f.arity, x0.arity))
    result = OrbitResult()
    seen: dict = {}
    current = x0
    for n in range(n_max + 1):
        key = current.coords
        if key in seen:
            result.periodic = True
            result.period_start = seen[key]
            break
        values = [poly.eval_int(c, current.coords) for c in f.components]
        if all(v == 0 for v in values):
            result.indeterminate_at = n
            break
        seen[key] = n
        result.points.append(current)
        if n == n_max:
            break
        current = make_point(values)
    return result
