"""Weil heights and generalized-gcd heights for rational points.

For a primitive point x = (a_0 : ... : a_N) and a subscheme Y cut out by
homogeneous generators g_j of degree d_j, the height of x along Y splits
into two non-negative pieces computed from the exact integers v_j = g_j(a):

    arch_part = min over j with v_j != 0 of (d_j * log||a|| - log|v_j|)
    gcd_part  = log gcd of the nonzero |v_j|

with ||a|| the max absolute coordinate.  When every generator vanishes the
point lies on Y and the height is infinite.  This generator presentation is
one representative of the usual bounded-function equivalence class of
heights attached to Y; a different generating set of the same ideal shifts
values by a bounded amount only, which the test suite samples but does not
assert as a universal constant.

All number-theoretic content (gcds, maxima, the argmin over j) is decided
in exact integer arithmetic; floating point enters only at the final log.
Python's math.log accepts arbitrarily large ints directly (it works from
the exponent and top bits), so no manual bit-length splitting is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import poly, projgeom
from .poly import BigPoly
from .projgeom import OrbitResult, ProjPoint, RationalMap, SubschemeIdeal


@dataclass(frozen=True)
class HeightValue:
    """h_Y(x) split into archimedean and gcd parts, with integer witnesses.

    When infinite is set the numeric fields are None.  The witness fields
    expose the exact integers behind the floats: sup_norm = ||a||, the
    gcd over nonzero generator values, and the generator value |v_j| (with
    its degree d_j) at which the archimedean min is attained.  Tests
    compare those integers exactly; the floats are presentation only.
    """
    total: Optional[float]
    arch_part: Optional[float]
    gcd_part: Optional[float]
    infinite: bool
    sup_norm: Optional[int] = None
    gcd_value: Optional[int] = None
    arch_value: Optional[int] = None
    arch_degree: Optional[int] = None


def weil_height(x: ProjPoint) -> float:
    """log of the max absolute coordinate of a primitive point."""
    return math.log(max(abs(c) for c in x.coords))


def subscheme_height(Y: SubschemeIdeal, x: ProjPoint) -> HeightValue:
    """Generalized-gcd height of x along Y.

    The archimedean argmin over generators is decided by exact integer
    cross-multiplication (compare ||a||^{d_j} |v_k| against ||a||^{d_k}
    |v_j|), never by comparing floats.
    """
    if Y.arity != x.arity:
        raise ValueError("ideal arity %d vs point arity %d"
                         % (Y.arity, x.arity))
    sup = max(abs(c) for c in x.coords)
    values: List[Tuple[int, int]] = []  # (|v_j|, d_j) for nonzero v_j
    for g in Y.generators:
        v = poly.eval_int(g, x.coords)
        if v != 0:
            ok, d = poly.is_homogeneous(g)
            assert ok and d is not None
            values.append((abs(v), d))
    if not values:
        return HeightValue(None, None, None, True)

    best_v, best_d = values[0]
    for v, d in values[1:]:
        # v/||a||^d maximal <=> arch term minimal
        if v * sup ** best_d > best_v * sup ** d:
            best_v, best_d = v, d
    g = 0
    for v, _ in values:
        g = math.gcd(g, v)
        if g == 1:
            break
    arch = best_d * math.log(sup) - math.log(best_v)
    gcd_part = math.log(g)
    return HeightValue(arch + gcd_part, arch, gcd_part, False,
                       sup_norm=sup, gcd_value=g,
                       arch_value=best_v, arch_degree=best_d)


class BczRow(NamedTuple):
    """One step of the diagonal-map closed form."""
    h: float
    h_Y: float
    ratio: float


class BczWitness(NamedTuple):
    """Exact integers behind bcz_closed_form, for integer-exact comparisons."""
    sup_norm: int          # max(a^n, b^n, 1)
    gcd_value: int         # gcd(a^n - 1, b^n - 1)
    arch_value: int        # max(a^n - 1, b^n - 1)


def bcz_exact_parts(a: int, b: int, n: int) -> BczWitness:
    if a < 2 or b < 2:
        raise ValueError("bases must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    an, bn = a ** n, b ** n
    return BczWitness(max(an, bn, 1), math.gcd(an - 1, bn - 1),
                      max(an - 1, bn - 1))


def bcz_closed_form(a: int, b: int, n: int) -> BczRow:
    """Heights of the n-th point of the diagonal orbit, in closed form.

    The orbit of (1:1:1) under (a*x0 : b*x1 : x2) is (a^n : b^n : 1), and
    Y = the point (1:1:1) gives generator values a^n - 1 and b^n - 1, so
    h_Y tracks log gcd(a^n - 1, b^n - 1) up to the archimedean correction.
    """
    w = bcz_exact_parts(a, b, n)
    h = math.log(w.sup_norm)
    h_y = math.log(w.sup_norm) - math.log(w.arch_value) + math.log(w.gcd_value)
    return BczRow(h, h_y, h_y / h)


def _iroot(m: int, k: int) -> int:
    """Floor k-th root by integer Newton iteration."""
    if m < 2 or k == 1:
        return m
    x = 1 << -(-m.bit_length() // k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def multiplicatively_dependent(a: int, b: int) -> bool:
    """True when a^i = b^j has a solution with i, j >= 1 (a, b >= 2).

    Both numbers are written as c^k with c minimal (not a perfect power);
    dependence is equivalent to sharing that base c.
    """
    def root_base(m: int) -> int:
        for k in range(m.bit_length(), 1, -1):
            r = _iroot(m, k)
            if r >= 2 and r ** k == m:
                return root_base(r)
        return m

    return root_base(a) == root_base(b)


@dataclass
class HeightSeries:
    """Per-iterate heights along an orbit; flags copied from the orbit."""
    rows: List[Tuple[int, float, HeightValue, Optional[float]]]
    indeterminate_at: Optional[int]
    periodic: bool
    period_start: Optional[int]
    orbit_points: List[ProjPoint]


def height_ratio_series(f: RationalMap, Y: SubschemeIdeal, x0: ProjPoint,
                        n_max: int) -> HeightSeries:
    """Rows (n, h, h_Y, ratio) along the orbit of x0.

    ratio is None when h = 0 or h_Y is infinite; truncation and
    periodicity flags propagate from the orbit computation.
    """
    orb = projgeom.orbit(f, x0, n_max)
    rows: List[Tuple[int, float, HeightValue, Optional[float]]] = []
    for n, pt in enumerate(orb.points):
        h = weil_height(pt)
        hy = subscheme_height(Y, pt)
        ratio: Optional[float] = None
        if h > 0.0 and not hy.infinite:
            assert hy.total is not None
            ratio = hy.total / h
        rows.append((n, h, hy, ratio))
    return HeightSeries(rows, orb.indeterminate_at, orb.periodic,
                        orb.period_start, orb.points)
