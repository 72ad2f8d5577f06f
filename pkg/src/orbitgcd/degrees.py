"""Dynamical and arithmetic degree estimation.

Four independent estimators live here:

* algebraic degree sequences deg f^n of reduced iterates (growth rate of
  the first dynamical degree),
* the topological degree as the number of preimages of a random target
  over F_p, counted geometrically: the fiber is cut down to a univariate
  eliminant by a resultant and the distinct roots in an algebraic closure
  are counted via the squarefree part, so the answer is the cardinality
  of the fiber over the algebraic closure of F_p rather than the count of
  F_p-rational preimages (rational counts miss almost all geometric
  points; see rational_fiber_count for the exhaustive-scan cross-check),
* the exact eigenvalue-product formula for monomial maps, and
* arithmetic-degree estimates from a list of orbit heights.

Randomness (targets, shears) is drawn from a caller-supplied generator so
reports are reproducible from a seed.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy

from . import ffield, poly, projgeom
from .ffield import Uni
from .projgeom import ProjPoint, RationalMap

Terms = List[Tuple[int, Tuple[int, ...]]]  # ((coeff mod p, exponents)) triples

# Fixed large primes for exact-rank certificates (full rank mod p implies
# full rank over Q).  Primality is asserted in the test suite.
_RANK_PRIMES = (2305843009213693951, 1000000000000000009, 999999999999999989)


# ---------------------------------------------------------------------------
# algebraic degree sequence


@dataclass
class DegreeSequence:
    """Degrees of reduced iterates; truncated marks a budget stop."""
    entries: List[Tuple[int, int]]  # (n, deg f^n)
    truncated: bool

    def with_roots(self) -> List[Tuple[int, int, float]]:
        return [(n, d, d ** (1.0 / n)) for n, d in self.entries]


def degree_sequence(f: RationalMap, n_max: int,
                    budget: int = projgeom.DEFAULT_DEGREE_BUDGET) -> DegreeSequence:
    """deg f^n for n = 1..n_max, stopping early when the raw degree of the
    next composition would exceed the budget (prefix is returned, flagged)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    entries = [(1, f.degree)]
    current = f
    truncated = False
    for n in range(2, n_max + 1):
        if current.degree * f.degree > budget:
            truncated = True
            break
        composed = [poly.compose(c, current.components) for c in f.components]
        current = projgeom.make_map(composed)
        entries.append((n, current.degree))
    return DegreeSequence(entries, truncated)


def d1_estimate(seq: DegreeSequence) -> float:
    """(deg f^n)^{1/n} at the last computed n; when the sequence was cut by
    the budget the ratio of the last two degrees is a better tail proxy."""
    n, d = seq.entries[-1]
    if seq.truncated and len(seq.entries) >= 2:
        return d / seq.entries[-2][1]
    return d ** (1.0 / n)


# ---------------------------------------------------------------------------
# topological degree by geometric fiber counting over F_p


@dataclass
class FiberCountReport:
    histogram: Dict[int, int]
    by_prime: Dict[int, Dict[int, int]]
    modes: List[int]
    mode: Optional[int]
    ambiguous: bool
    degenerate: bool
    failed_samples: int
    samples: int

    def modes_by_prime(self) -> Dict[int, Optional[int]]:
        out: Dict[int, Optional[int]] = {}
        for p, hist in self.by_prime.items():
            out[p] = _histogram_modes(hist)[0][0] if hist else None
        return out


def _histogram_modes(hist: Dict[int, int]) -> List[Tuple[int, int]]:
    best = max(hist.values())
    return sorted((k, v) for k, v in hist.items() if v == best)


def _component_terms(c, prime: int) -> Terms:
    fp = ffield.reduce_poly(c, prime)
    return [(coeff, exps) for exps, coeff in fp.terms]


def _chart_terms(fi: Terms, t: int, f_last: Terms, prime: int) -> Terms:
    """Terms of f_i - t * f_last, the chart equation for target value t."""
    out = list(fi)
    mt = (-t) % prime
    out.extend(((mt * c) % prime, e) for c, e in f_last)
    return [(c, e) for c, e in out if c]


def _xy_degree(terms: Terms) -> int:
    return max(e[0] + e[1] for _, e in terms)


def _top_form_value(terms: Terms, alpha: int, gamma: int, prime: int) -> int:
    d = _xy_degree(terms)
    acc = 0
    for c, (e0, e1, _) in terms:
        if e0 + e1 == d:
            acc = (acc + c * pow(alpha, e0, prime) * pow(gamma, e1, prime)) % prime
    return acc


def _specialized(terms: Terms, shear: Tuple[int, int, int, int], v0: int,
                 prime: int) -> Uni:
    """The chart poly at z=1, sheared x=a*u+b*v, y=g*u+d*v, then v=v0."""
    al, be, ga, de = shear
    x_of_u: Uni = [be * v0 % prime, al]
    y_of_u: Uni = [de * v0 % prime, ga]
    pow_x: Dict[int, Uni] = {0: [1]}
    pow_y: Dict[int, Uni] = {0: [1]}

    def grab(tab: Dict[int, Uni], base: Uni, e: int) -> Uni:
        top = max(tab)
        while top < e:
            tab[top + 1] = ffield.uni_mul(tab[top], base, prime)
            top += 1
        return tab[e]

    acc: Uni = []
    for c, (e0, e1, _) in terms:
        t = ffield.uni_scale(
            ffield.uni_mul(grab(pow_x, x_of_u, e0), grab(pow_y, y_of_u, e1), prime),
            c, prime)
        acc = ffield.uni_add(acc, t, prime)
    return acc


def _eliminant(g1: Terms, g2: Terms, shear: Tuple[int, int, int, int],
               prime: int) -> Optional[Uni]:
    """Res_u of the sheared chart equations, interpolated in v.

    Returns None when the shear loses a leading coefficient or the
    resultant vanishes identically (shared factor for this target).
    """
    d1, d2 = _xy_degree(g1), _xy_degree(g2)
    n_samples = d1 * d2 + 1
    if n_samples >= prime:
        raise ValueError("prime %d too small for degree-%d eliminant"
                         % (prime, d1 * d2))
    xs, ys = [], []
    for v0 in range(n_samples):
        h1 = _specialized(g1, shear, v0, prime)
        h2 = _specialized(g2, shear, v0, prime)
        if ffield.uni_deg(h1) != d1 or ffield.uni_deg(h2) != d2:
            return None
        xs.append(v0)
        ys.append(ffield.uni_resultant(h1, h2, prime))
    r = ffield.uni_interpolate(xs, ys, prime)
    return r if r else None


def _strip_shared(r: Uni, other: Uni, prime: int) -> Uni:
    """Divide out of r every factor it shares with other."""
    g = ffield.uni_gcd(r, other, prime)
    while ffield.uni_deg(g) > 0:
        r = ffield.uni_divmod(r, g, prime)[0]
        g = ffield.uni_gcd(r, g, prime)
    return r


def _line_form(terms: Terms, prime: int) -> Uni:
    """Restriction to the line z=0 as a coefficient list indexed by the
    x-exponent (a binary form in x, y of the full degree)."""
    d = max(sum(e) for _, e in terms)
    out = [0] * (d + 1)
    for c, (e0, e1, e2) in terms:
        if e2 == 0:
            out[e0] = (out[e0] + c) % prime
    return out


def _line_count(comps: List[Terms], a: int, b: int, prime: int) -> int:
    """Distinct fiber points on the line z=0, excluding base points.

    On that locus the conditions f0 = a*f2 and f1 = b*f2 reduce to a pair
    of binary forms; common roots where f2 also vanishes are base points
    of the map and are not fiber points.
    """
    f0, f1, f2 = comps
    g1_raw = _line_form(_chart_terms(f0, a, f2, prime), prime)
    g2_raw = _line_form(_chart_terms(f1, b, f2, prime), prime)
    phi_raw = _line_form(f2, prime)
    d = len(g1_raw) - 1
    g1 = ffield.uni_norm(list(g1_raw))
    g2 = ffield.uni_norm(list(g2_raw))
    phi = ffield.uni_norm(list(phi_raw))
    h = ffield.uni_gcd(g1, g2, prime)  # gcd(0, g) = g, so zeros are safe
    if not h:
        return 0  # both forms vanish on the whole line; degenerate, skip
    base = ffield.uni_gcd(h, phi, prime)
    cnt = ffield.distinct_root_count(h, prime) - ffield.distinct_root_count(base, prime)
    # the point (1:0:0) corresponds to the top coefficient vanishing
    if g1_raw[d] == 0 and g2_raw[d] == 0:
        if phi_raw[d] != 0:
            cnt += 1
    return max(cnt, 0)


def geometric_fiber_count(f: RationalMap, prime: int, target_ab: Tuple[int, int],
                          rng: random.Random, shear_tries: int = 8) -> Optional[int]:
    """#f^{-1}((a:b:1)) over the algebraic closure of F_p, base points excluded.

    Two successful random shears are required and the larger count wins
    (a shear can only undercount, when two fiber points collide in v).
    Returns None when no shear produced a usable eliminant.
    """
    a, b = target_ab
    comps = [_component_terms(c, prime) for c in f.components]
    if any(not c for c in comps):
        raise ValueError("prime %d wipes out a map component" % prime)
    g1 = _chart_terms(comps[0], a, comps[2], prime)
    g2 = _chart_terms(comps[1], b, comps[2], prime)
    if not g1 or not g2:
        return None  # target proportional to a component; resample
    if _xy_degree(g1) == 0 or _xy_degree(g2) == 0:
        # a chart equation is a nonzero constant: no affine fiber points
        return _line_count(comps, a, b, prime)

    counts: List[int] = []
    for _ in range(shear_tries):
        al, ga = rng.randrange(1, prime), rng.randrange(prime)
        be, de = rng.randrange(prime), rng.randrange(1, prime)
        if (al * de - be * ga) % prime == 0:
            continue
        if _top_form_value(g1, al, ga, prime) == 0:
            continue
        if _top_form_value(g2, al, ga, prime) == 0:
            continue
        shear = (al, be, ga, de)
        r = _eliminant(g1, g2, shear, prime)
        if r is None:
            continue
        # factors shared with the eliminants of unrelated targets come from
        # the base locus, not from this fiber; strip them
        clean = r
        stripped = 0
        for _aux in range(4):
            if stripped == 2:
                break
            aa, bb = rng.randrange(prime), rng.randrange(prime)
            a1 = _chart_terms(comps[0], aa, comps[2], prime)
            a2 = _chart_terms(comps[1], bb, comps[2], prime)
            if not a1 or not a2 or _xy_degree(a1) == 0 or _xy_degree(a2) == 0:
                continue
            raux = _eliminant(a1, a2, shear, prime)
            if raux is not None:
                clean = _strip_shared(clean, raux, prime)
                stripped += 1
        counts.append(ffield.distinct_root_count(clean, prime))
        if len(counts) == 2:
            break
    if not counts:
        return None
    return max(counts) + _line_count(comps, a, b, prime)


def topological_degree_ff(f: RationalMap, primes: Sequence[int],
                          targets_per_prime: int,
                          rng: Optional[random.Random] = None,
                          threads: int = 1) -> FiberCountReport:
    """Histogram of geometric fiber sizes over random targets; the mode
    estimates the topological degree.

    Targets are drawn from the affine chart (a : b : 1), which covers all
    but a null set of P^2(F_p).  Ties in the histogram are all reported
    and flagged ambiguous.  The threads parameter is accepted for
    interface stability; counting is fast enough single-threaded.
    """
    del threads
    if f.arity != 3:
        raise ValueError("fiber counting is implemented for P^2 only")
    if rng is None:
        rng = random.Random(0)
    bound = f.degree * f.degree
    by_prime: Dict[int, Dict[int, int]] = {}
    overall: Counter = Counter()
    failed = 0
    samples = 0
    for prime in primes:
        ffield.check_prime(prime)
        hist: Counter = Counter()
        for _ in range(targets_per_prime):
            samples += 1
            count = None
            for _retry in range(3):
                target = (rng.randrange(prime), rng.randrange(prime))
                count = geometric_fiber_count(f, prime, target, rng)
                if count is not None:
                    break
            if count is None:
                failed += 1
                continue
            if count > bound:
                raise RuntimeError(
                    "fiber count %d exceeds the Bezout bound %d" % (count, bound))
            hist[count] += 1
            overall[count] += 1
        by_prime[prime] = dict(sorted(hist.items()))
    if overall:
        modes = [k for k, _ in _histogram_modes(dict(overall))]
    else:
        modes = []
    mode = modes[0] if len(modes) == 1 else None
    degenerate = failed * 2 > samples or mode == 0
    return FiberCountReport(histogram=dict(sorted(overall.items())),
                            by_prime=by_prime, modes=modes, mode=mode,
                            ambiguous=len(modes) > 1, degenerate=degenerate,
                            failed_samples=failed, samples=samples)


def rational_fiber_count(f: RationalMap, prime: int,
                         target: Tuple[int, ...]) -> int:
    """Exhaustive count of F_p-rational preimages of a normalized target.

    A cross-check helper: every rational preimage is a geometric one, so
    this never exceeds geometric_fiber_count for the same target.  Cost is
    a scan of all p^2 + p + 1 points; use small primes.
    """
    comps = [ffield.reduce_poly(c, prime) for c in f.components]
    want = ffield.normalize_proj(target, prime)
    found = 0
    for s in ffield.proj_points_fp(2, prime):
        image = ffield.normalize_proj([c.eval(s) for c in comps], prime)
        if image is not None and image == want:
            found += 1
    return found


# ---------------------------------------------------------------------------
# monomial maps


def _bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class MonomialMap:
    """Integer exponent matrix of a dominant monomial self-map."""
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.matrix)
        if n < 1 or any(len(row) != n for row in self.matrix):
            raise ValueError("matrix must be square and non-empty")
        if _bareiss_det(self.matrix) == 0:
            raise ValueError("matrix is singular")

    @property
    def size(self) -> int:
        return len(self.matrix)


def make_monomial_map(matrix: Sequence[Sequence[int]]) -> MonomialMap:
    return MonomialMap(tuple(tuple(int(v) for v in row) for row in matrix))


def _char_poly_coeffs(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Exact characteristic polynomial lambda^n + c1 lambda^{n-1} + ... + cn
    by the Faddeev-LeVerrier recursion; every division is exact."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    mk = [row[:] for row in a]
    coeffs = [1, -sum(mk[i][i] for i in range(n))]
    ck = coeffs[1]
    for k in range(2, n + 1):
        b = [row[:] for row in mk]
        for i in range(n):
            b[i][i] += ck
        mk = [[sum(a[i][l] * b[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
        t = sum(mk[i][i] for i in range(n))
        if t % k != 0:
            raise AssertionError("Faddeev-LeVerrier trace not divisible")
        ck = -(t // k)
        coeffs.append(ck)
    return coeffs


def monomial_dyn_degrees(A: "MonomialMap | Sequence[Sequence[int]]") -> List[float]:
    """d_0..d_N for the monomial map of exponent matrix A: the i-th entry is
    the product of the i largest eigenvalue moduli; d_N is |det A| exactly.

    Roots come from numpy's companion-matrix eigenvalues and are
    cross-checked against the exact determinant and trace.
    """
    mono = A if isinstance(A, MonomialMap) else make_monomial_map(A)
    matrix = mono.matrix
    n = mono.size
    det = _bareiss_det(matrix)
    coeffs = _char_poly_coeffs(matrix)
    roots = numpy.roots(numpy.array(coeffs, dtype=float))
    moduli = sorted((abs(complex(r)) for r in roots), reverse=True)

    prod_all = 1.0
    for m in moduli:
        prod_all *= m
    if abs(prod_all - abs(det)) > 1e-10 * max(1.0, abs(det)):
        raise RuntimeError("eigenvalue moduli disagree with |det| beyond tolerance")
    trace = sum(matrix[i][i] for i in range(n))
    if abs(sum(complex(r) for r in roots).real - trace) > 1e-8 * max(1.0, abs(trace)):
        raise RuntimeError("eigenvalue sum disagrees with trace beyond tolerance")

    out = [1.0]
    acc = 1.0
    for i, m in enumerate(moduli):
        acc *= m
        out.append(float(abs(det)) if i == n - 1 else acc)
    return out


# ---------------------------------------------------------------------------
# arithmetic degree from orbit heights


@dataclass
class AlphaEstimate:
    root_tail: float
    ratio_tail: float
    root_index: int
    ratio_steps: Tuple[int, int]  # first and last step index used
    degenerate: bool = False
    note: Optional[str] = None


def arithmetic_degree_estimate(heights: Sequence[float]) -> AlphaEstimate:
    """Tail estimates of the arithmetic degree from h(f^n x), n = 0, 1, ...

    root_tail is max(1, h_last)^{1/n_last}; ratio_tail is the geometric
    mean of successive height quotients over the last ceil(len/3) steps,
    skipping steps with a zero denominator.
    """
    hs = [float(h) for h in heights]
    finite = [h for h in hs if math.isfinite(h)]
    if len(finite) < 4:
        raise ValueError("need at least 4 finite height entries")
    if all(h == 0.0 for h in hs):
        return AlphaEstimate(1.0, 1.0, len(hs) - 1, (0, 0), degenerate=True,
                             note="all heights zero")
    n_last = len(hs) - 1
    while n_last > 0 and not math.isfinite(hs[n_last]):
        n_last -= 1
    root_tail = max(1.0, hs[n_last]) ** (1.0 / n_last)

    window = math.ceil(len(hs) / 3)
    first = max(0, len(hs) - 1 - window)

    def steps_in(lo: int) -> List[Tuple[int, float]]:
        out = []
        for i in range(lo, len(hs) - 1):
            if hs[i] > 0 and math.isfinite(hs[i]) and math.isfinite(hs[i + 1]):
                out.append((i, hs[i + 1] / hs[i]))
        return out

    steps = steps_in(first)
    note = None
    if not steps:
        steps = steps_in(0)
        note = "tail window empty; used all usable steps"
    if not steps:
        return AlphaEstimate(root_tail, 1.0, n_last, (0, 0), degenerate=True,
                             note="no usable height quotients")
    log_mean = sum(math.log(s) for _, s in steps) / len(steps)
    return AlphaEstimate(root_tail, math.exp(log_mean), n_last,
                         (steps[0][0], steps[-1][0]), note=note)


def alpha_estimate_rows(heights: Sequence[float]) -> List[Tuple[int, float, Optional[float]]]:
    """Per-iterate estimates (n, max(1,h_n)^{1/n}, h_n/h_{n-1})."""
    rows: List[Tuple[int, float, Optional[float]]] = []
    for n in range(1, len(heights)):
        root = max(1.0, heights[n]) ** (1.0 / n)
        step = heights[n] / heights[n - 1] if heights[n - 1] > 0 else None
        rows.append((n, root, step))
    return rows


# ---------------------------------------------------------------------------
# hyperbolicity advisory and orbit genericity heuristic


@dataclass(frozen=True)
class HyperbolicityReport:
    d1: float
    d2: float
    alpha: float
    hyperbolic: bool
    alpha_matches_d1: bool
    advisory: Optional[str]


def hyperbolicity_report(d1: float, d2: float, alpha_est: float) -> HyperbolicityReport:
    """Purely informational: flags d1 > d2 and alpha close to d1 (2% band);
    when both hold the orbit is expected to be Zariski dense."""
    hyperbolic = d1 > d2
    matches = abs(alpha_est - d1) <= 0.02 * max(d1, 1e-12)
    advisory = None
    if hyperbolic and matches:
        advisory = ("orbit expected Zariski dense "
                    "(1-cohomologically hyperbolic and alpha matches d1)")
    return HyperbolicityReport(d1, d2, alpha_est, hyperbolic, matches, advisory)


@dataclass
class GenericityReport:
    verdict: str  # "generic-consistent" | "possibly-contained" | "insufficient"
    detail: str
    by_degree: Dict[int, str] = field(default_factory=dict)


def _monomial_exponents(arity: int, degree: int) -> List[Tuple[int, ...]]:
    if arity == 1:
        return [(degree,)]
    out = []
    for e in range(degree + 1):
        for rest in _monomial_exponents(arity - 1, degree - e):
            out.append((e,) + rest)
    return out


def _rank_mod(rows: List[List[int]], prime: int) -> int:
    m = [[v % prime for v in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], prime - 2, prime)
        for r in range(rank + 1, len(m)):
            if m[r][col]:
                fac = m[r][col] * inv % prime
                for cc in range(col, cols):
                    m[r][cc] = (m[r][cc] - fac * m[rank][cc]) % prime
        rank += 1
        if rank == len(m):
            break
    return rank


def orbit_genericity_heuristic(points: Sequence[ProjPoint],
                               max_degree: int = 2) -> GenericityReport:
    """Heuristic check that no hypersurface of small degree contains the
    computed orbit segment.

    Full column rank of the monomial-evaluation matrix modulo a large
    prime certifies full rank over Q, hence no containing hypersurface of
    that degree.  Rank deficiency modulo several primes is reported as
    possible containment only; it is not a proof.
    """
    if not points:
        return GenericityReport("insufficient", "no orbit points", {})
    arity = points[0].arity
    by_degree: Dict[int, str] = {}
    verdict = "generic-consistent"
    details: List[str] = []
    for d in range(1, max_degree + 1):
        monos = _monomial_exponents(arity, d)
        if len(points) < len(monos):
            by_degree[d] = "insufficient"
            if verdict == "generic-consistent":
                verdict = "insufficient"
            details.append("degree %d: need %d points, have %d"
                           % (d, len(monos), len(points)))
            continue
        certified = False
        for prime in _RANK_PRIMES:
            rows = []
            for pt in points:
                coords = [c % prime for c in pt.coords]
                rows.append([math.prod(pow(c, e, prime) for c, e in zip(coords, exps)) % prime
                             for exps in monos])
            if _rank_mod(rows, prime) == len(monos):
                certified = True
                break
        if certified:
            by_degree[d] = "no containing hypersurface"
        else:
            by_degree[d] = "possible containment"
            verdict = "possibly-contained"
            details.append("degree %d evaluation matrix is rank-deficient "
                           "mod %d primes" % (d, len(_RANK_PRIMES)))
    detail = "; ".join(details) if details else \
        "no hypersurface of degree <= %d contains the orbit segment" % max_degree
    return GenericityReport(verdict, detail, by_degree)


