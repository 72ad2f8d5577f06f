"""Sparse multivariate polynomials over arbitrary-precision integers.

A polynomial in ``arity`` variables x0..x{arity-1} is a map from exponent
tuples to nonzero integer coefficients.  The representation is canonical:
no zero coefficients are stored, every exponent tuple has length ``arity``,
and all entries are non-negative.  Monomials are ordered graded
lexicographically (total degree first, then the exponent tuple itself),
which makes leading terms well defined and division deterministic.

The zero polynomial has no terms; its degree is the sentinel ``None``,
never a fake numeric value.

Coefficient arithmetic is exact throughout.  The gcd here is the gcd in
Z[x0..xN]: the result is primitive (integer content 1) with positive
leading coefficient, so it is unique and the integer part of a common
divisor must be tracked separately via :func:`content`.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]
TermMap = Dict[Exponent, int]

# Fixed substitution primes for the modular coprimality certificate used by
# gcd_multivar.  Both are prime; the test suite re-verifies that claim.
_CERT_PRIMES = (2305843009213693951, 1000000000000000009)

# Kronecker images denser than this are not worth materializing; fall back
# to the exact algorithm instead.
_KRONECKER_LIMIT = 2_000_000


class ArityMismatch(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class HomogeneityError(ValueError):
    """A substitution tuple was not homogeneous of one common degree."""


class BigPoly:
    """Immutable-by-convention sparse polynomial.

    ``terms`` maps exponent tuples to nonzero int coefficients.  Do not
    mutate it after construction; all operations return fresh objects.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: TermMap):
        if arity < 1:
            raise ValueError("arity must be >= 1, got %r" % (arity,))
        clean: TermMap = {}
        for exps, coeff in terms.items():
            if len(exps) != arity:
                raise ArityMismatch(
                    "exponent tuple %r does not match arity %d" % (exps, arity))
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in %r" % (exps,))
            if coeff != 0:
                clean[exps] = coeff
        self.arity = arity
        self.terms = clean

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "BigPoly") -> "BigPoly":
        return add(self, other)

    def __sub__(self, other: "BigPoly") -> "BigPoly":
        return add(self, neg(other))

    def __mul__(self, other: "BigPoly") -> "BigPoly":
        return mul(self, other)

    def __neg__(self) -> "BigPoly":
        return neg(self)

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]),
                       reverse=True)
        body = ", ".join("%r: %d" % (e, c) for e, c in items[:8])
        if len(items) > 8:
            body += ", ..."
        return "BigPoly(arity=%d, {%s})" % (self.arity, body)


def zero(arity: int) -> BigPoly:
    return BigPoly(arity, {})


def const(arity: int, value: int) -> BigPoly:
    return BigPoly(arity, {(0,) * arity: value})


def variable(arity: int, index: int) -> BigPoly:
    if not 0 <= index < arity:
        raise ValueError("variable index %d out of range for arity %d"
                         % (index, arity))
    exps = tuple(1 if i == index else 0 for i in range(arity))
    return BigPoly(arity, {exps: 1})


def monomial(arity: int, exps: Sequence[int], coeff: int = 1) -> BigPoly:
    return BigPoly(arity, {tuple(exps): coeff})


def _grlex_key(exps: Exponent) -> Tuple[int, Exponent]:
    return (sum(exps), exps)


def _check_arity(p: BigPoly, q: BigPoly) -> None:
    if p.arity != q.arity:
        raise ArityMismatch("arity %d vs %d" % (p.arity, q.arity))


def add(p: BigPoly, q: BigPoly) -> BigPoly:
    """Exact sum."""
    _check_arity(p, q)
    out = dict(p.terms)
    for exps, coeff in q.terms.items():
        acc = out.get(exps, 0) + coeff
        if acc:
            out[exps] = acc
        else:
            out.pop(exps, None)
    result = BigPoly.__new__(BigPoly)
    result.arity = p.arity
    result.terms = out
    return result


def neg(p: BigPoly) -> BigPoly:
    result = BigPoly.__new__(BigPoly)
    result.arity = p.arity
    result.terms = {e: -c for e, c in p.terms.items()}
    return result


def scale(p: BigPoly, c: int) -> BigPoly:
    if c == 0:
        return zero(p.arity)
    result = BigPoly.__new__(BigPoly)
    result.arity = p.arity
    result.terms = {e: c * v for e, v in p.terms.items()}
    return result


def mul(p: BigPoly, q: BigPoly) -> BigPoly:
    """Exact product via term-by-term convolution."""
    _check_arity(p, q)
    out: TermMap = {}
    # iterate over the smaller support in the outer loop
    if len(p.terms) > len(q.terms):
        p, q = q, p
    qitems = list(q.terms.items())
    for pe, pc in p.terms.items():
        for qe, qc in qitems:
            key = tuple(a + b for a, b in zip(pe, qe))
            acc = out.get(key, 0) + pc * qc
            if acc:
                out[key] = acc
            else:
                del out[key]
    result = BigPoly.__new__(BigPoly)
    result.arity = p.arity
    result.terms = out
    return result


def eval_int(p: BigPoly, point: Sequence[int]) -> int:
    """Exact value of p at an integer point."""
    if len(point) != p.arity:
        raise ArityMismatch("point length %d vs arity %d"
                            % (len(point), p.arity))
    # cache powers per variable; orbit coordinates can be huge, so avoid
    # recomputing the same power twice
    tables: List[Dict[int, int]] = [{0: 1} for _ in range(p.arity)]

    def power(i: int, e: int) -> int:
        tab = tables[i]
        if e not in tab:
            tab[e] = point[i] ** e
        return tab[e]

    total = 0
    for exps, coeff in p.terms.items():
        val = coeff
        for i, e in enumerate(exps):
            if e:
                val *= power(i, e)
        total += val
    return total


def degree(p: BigPoly) -> Optional[int]:
    """Total degree; None for the zero polynomial."""
    if not p.terms:
        return None
    return max(sum(e) for e in p.terms)


def is_homogeneous(p: BigPoly) -> Tuple[bool, Optional[int]]:
    """(True, d) when every term has total degree d; zero is vacuously
    homogeneous with sentinel degree None."""
    if not p.terms:
        return True, None
    degs = {sum(e) for e in p.terms}
    if len(degs) == 1:
        return True, degs.pop()
    return False, None


def compose(p: BigPoly, subst: Sequence[BigPoly]) -> BigPoly:
    """Substitute subst[i] for x_i in p.

    The substitution tuple must consist of homogeneous polynomials of one
    common degree (zero entries are degree-agnostic), the setting in which
    iterates of projective maps live.  The result is then homogeneous of
    degree deg(p)*d for homogeneous p.
    """
    if len(subst) != p.arity:
        raise ArityMismatch("substitution length %d vs arity %d"
                            % (len(subst), p.arity))
    if not subst:
        raise ValueError("empty substitution")
    out_arity = subst[0].arity
    common: Optional[int] = None
    for s in subst:
        if s.arity != out_arity:
            raise ArityMismatch("substitution entries have mixed arities")
        ok, d = is_homogeneous(s)
        if not ok:
            raise HomogeneityError("substitution entry is not homogeneous")
        if d is not None:
            if common is not None and d != common:
                raise HomogeneityError(
                    "substitution degrees differ: %d vs %d" % (common, d))
            common = d

    tables: List[Dict[int, BigPoly]] = [{0: const(out_arity, 1)}
                                        for _ in range(p.arity)]

    def power(i: int, e: int) -> BigPoly:
        tab = tables[i]
        top = max(tab)
        while top < e:
            tab[top + 1] = mul(tab[top], subst[i])
            top += 1
        return tab[e]

    acc = zero(out_arity)
    for exps, coeff in p.terms.items():
        term = const(out_arity, coeff)
        for i, e in enumerate(exps):
            if e:
                term = mul(term, power(i, e))
        acc = add(acc, term)
    return acc


def content(p: BigPoly) -> int:
    """Non-negative gcd of all coefficients; 0 for the zero polynomial."""
    g = 0
    for coeff in p.terms.values():
        g = math.gcd(g, coeff)
        if g == 1:
            break
    return g


def leading_term(p: BigPoly) -> Tuple[Exponent, int]:
    """Graded-lex maximal term of a nonzero polynomial."""
    if not p.terms:
        raise ValueError("zero polynomial has no leading term")
    exps = max(p.terms, key=_grlex_key)
    return exps, p.terms[exps]


def div_exact(p: BigPoly, d: BigPoly) -> Optional[BigPoly]:
    """Quotient p/d when d divides p exactly over the integers, else None."""
    _check_arity(p, d)
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return zero(p.arity)
    de, dc = leading_term(d)
    rem = dict(p.terms)
    quo: TermMap = {}
    while rem:
        re = max(rem, key=_grlex_key)
        rc = rem[re]
        qe = tuple(a - b for a, b in zip(re, de))
        if any(e < 0 for e in qe) or rc % dc != 0:
            return None
        qc = rc // dc
        quo[qe] = quo.get(qe, 0) + qc
        for ee, cc in d.terms.items():
            key = tuple(a + b for a, b in zip(qe, ee))
            acc = rem.get(key, 0) - qc * cc
            if acc:
                rem[key] = acc
            else:
                rem.pop(key, None)
    return BigPoly(p.arity, quo)


def _min_exponents(p: BigPoly) -> Exponent:
    its = iter(p.terms)
    mins = list(next(its))
    for exps in its:
        for i, e in enumerate(exps):
            if e < mins[i]:
                mins[i] = e
    return tuple(mins)


def _shift_down(p: BigPoly, shift: Exponent) -> BigPoly:
    if not any(shift):
        return p
    result = BigPoly.__new__(BigPoly)
    result.arity = p.arity
    result.terms = {tuple(a - b for a, b in zip(e, shift)): c
                    for e, c in p.terms.items()}
    return result


def _normalize_sign(p: BigPoly) -> BigPoly:
    if p.terms and leading_term(p)[1] < 0:
        return neg(p)
    return p


def primitive_part(p: BigPoly) -> BigPoly:
    """p divided by its content, sign-normalized; zero stays zero."""
    c = content(p)
    if c == 0:
        return p
    result = BigPoly.__new__(BigPoly)
    result.arity = p.arity
    result.terms = {e: v // c for e, v in p.terms.items()}
    return _normalize_sign(result)


def _kronecker_coprime(p: BigPoly, q: BigPoly) -> bool:
    """Modular certificate that gcd(p, q) has no non-constant part.

    Maps x_i -> t^{s_i} with radix weights that keep distinct monomials
    distinct, reduces both images mod a large prime, and takes a univariate
    gcd.  A constant image gcd proves the true gcd is constant, up to the
    (astronomically unlikely) event that the prime divides the leading
    structure of the actual gcd; two independent primes are used.  A
    non-constant image gcd is inconclusive and reported as False.
    """
    maxes = [0] * p.arity
    for poly in (p, q):
        for exps in poly.terms:
            for i, e in enumerate(exps):
                if e > maxes[i]:
                    maxes[i] = e
    weights = [1] * p.arity
    acc = 1
    for i in range(p.arity):
        weights[i] = acc
        acc *= maxes[i] + 1
        if acc > _KRONECKER_LIMIT:
            return False

    def image_gcd(prime: int) -> int:
        def image(poly: BigPoly) -> List[int]:
            dense = [0] * acc
            for exps, coeff in poly.terms.items():
                idx = sum(w * e for w, e in zip(weights, exps))
                dense[idx] = (dense[idx] + coeff) % prime
            while dense and dense[-1] == 0:
                dense.pop()
            return dense

        a, b = image(p), image(q)
        while b:
            # univariate remainder mod prime
            db = len(b) - 1
            inv = pow(b[-1], prime - 2, prime)
            while len(a) - 1 >= db and a:
                k = len(a) - 1 - db
                c = (a[-1] * inv) % prime
                for i, bc in enumerate(b):
                    a[i + k] = (a[i + k] - c * bc) % prime
                while a and a[-1] == 0:
                    a.pop()
            a, b = b, a
        return len(a) - 1  # degree of the univariate gcd

    return all(image_gcd(prime) == 0 for prime in _CERT_PRIMES)


def _present_variables(p: BigPoly, q: BigPoly) -> List[int]:
    present = [False] * p.arity
    for poly in (p, q):
        for exps in poly.terms:
            for i, e in enumerate(exps):
                if e:
                    present[i] = True
    return [i for i, flag in enumerate(present) if flag]


def _as_univariate(p: BigPoly, var: int) -> Dict[int, BigPoly]:
    """View p as a polynomial in x_var with BigPoly coefficients."""
    out: Dict[int, TermMap] = {}
    for exps, coeff in p.terms.items():
        e = exps[var]
        rest = exps[:var] + (0,) + exps[var + 1:]
        out.setdefault(e, {})[rest] = coeff
    return {e: BigPoly(p.arity, tm) for e, tm in out.items()}


def _from_univariate(coeffs: Dict[int, BigPoly], var: int, arity: int) -> BigPoly:
    terms: TermMap = {}
    for e, poly in coeffs.items():
        for exps, coeff in poly.terms.items():
            key = exps[:var] + (e,) + exps[var + 1:]
            terms[key] = coeff
    return BigPoly(arity, terms)


def _uni_is_zero(u: Dict[int, BigPoly]) -> bool:
    return not any(u.values())


def _uni_normalize(u: Dict[int, BigPoly]) -> Dict[int, BigPoly]:
    return {e: c for e, c in u.items() if c.terms}


def _uni_scale(u: Dict[int, BigPoly], s: BigPoly) -> Dict[int, BigPoly]:
    return _uni_normalize({e: mul(c, s) for e, c in u.items()})


def _uni_sub(u: Dict[int, BigPoly], v: Dict[int, BigPoly]) -> Dict[int, BigPoly]:
    out = dict(u)
    for e, c in v.items():
        out[e] = add(out.get(e, zero(c.arity)), neg(c))
    return _uni_normalize(out)


def _uni_shift_mul(u: Dict[int, BigPoly], k: int) -> Dict[int, BigPoly]:
    return {e + k: c for e, c in u.items()}


def _pseudo_rem(a: Dict[int, BigPoly], b: Dict[int, BigPoly]) -> Dict[int, BigPoly]:
    """Pseudo-remainder of a by b in one main variable, poly coefficients."""
    db = max(b)
    lcb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        r = _uni_sub(_uni_scale(r, lcb),
                     _uni_shift_mul(_uni_scale(b, lcr), dr - db))
        if r and max(r) == dr:  # cancellation must remove the top term
            raise AssertionError("pseudo-remainder failed to reduce degree")
    return r


def _content_wrt(u: Dict[int, BigPoly]) -> BigPoly:
    coeffs = list(u.values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = gcd_multivar(g, c)
        if degree(g) == 0 and content(g) == 1:
            break
    # the gcd is primitive already; bundle in the integer content so the
    # primitive part below is primitive in the full sense
    ic = 0
    for c in coeffs:
        ic = math.gcd(ic, content(c))
        if ic == 1:
            break
    return scale(g, ic) if ic > 1 else g


def _gcd_exact(p: BigPoly, q: BigPoly) -> BigPoly:
    """Primitive-part recursion with a primitive pseudo-remainder sequence."""
    pv = _present_variables(p, q)
    if not pv:
        return const(p.arity, 1)
    var = pv[-1]
    up, uq = _as_univariate(p, var), _as_univariate(q, var)
    if max(up) == 0 or max(uq) == 0:
        # one operand does not involve the chosen variable after all:
        # gcd divides its coefficients' gcd
        flat = up if max(up) == 0 else uq
        other = uq if max(up) == 0 else up
        g = flat[0]
        for c in other.values():
            g = gcd_multivar(g, c)
        return g

    cont_p, cont_q = _content_wrt(up), _content_wrt(uq)
    cont_gcd = gcd_multivar(cont_p, cont_q)

    def primitive(u: Dict[int, BigPoly], cont: BigPoly) -> Dict[int, BigPoly]:
        out = {}
        for e, c in u.items():
            d = div_exact(c, cont)
            if d is None:
                raise AssertionError("content division failed")
            out[e] = d
        return _uni_normalize(out)

    a = primitive(up, cont_p)
    b = primitive(uq, cont_q)
    if max(a) < max(b):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b)
        if _uni_is_zero(r):
            break
        rp = _from_univariate(r, var, p.arity)
        rp = primitive_part(rp)
        rcont = _content_wrt(_as_univariate(rp, var))
        rp2 = div_exact(rp, rcont)
        if rp2 is None:
            raise AssertionError("primitive PRS content division failed")
        a, b = b, _uni_normalize(_as_univariate(rp2, var))
        if max(b) == 0:
            # coprime in the main variable
            return _normalize_sign(cont_gcd)
    g = _from_univariate(b, var, p.arity)
    g = primitive_part(g)
    gcont = _content_wrt(_as_univariate(g, var))
    g2 = div_exact(g, gcont)
    if g2 is None:
        raise AssertionError("gcd primitive part division failed")
    return _normalize_sign(primitive_part(mul(cont_gcd, g2)))


def gcd_multivar(p: BigPoly, q: BigPoly) -> BigPoly:
    """Primitive gcd in Z[x0..xN], leading coefficient positive.

    A layered strategy: trivial and single-term cases are dispatched
    directly, a shared monomial factor is split off, a modular Kronecker
    projection certifies coprimality cheaply, and only then does the exact
    primitive-PRS recursion run.  Every non-constant candidate is verified
    by exact division of both inputs, falling back to the exact algorithm
    if verification fails.
    """
    _check_arity(p, q)
    if not p.terms:
        return primitive_part(q)
    if not q.terms:
        return primitive_part(p)
    if p.terms == q.terms or p.terms == neg(q).terms:
        return primitive_part(p)

    shift_p, shift_q = _min_exponents(p), _min_exponents(q)
    shift = tuple(min(a, b) for a, b in zip(shift_p, shift_q))
    ps, qs = _shift_down(p, shift_p), _shift_down(q, shift_q)

    if len(p.terms) == 1 or len(q.terms) == 1:
        # gcd with a monomial is the shared monomial factor
        return monomial(p.arity, shift, 1)

    mono = monomial(p.arity, shift, 1)
    if degree(ps) == 0 or degree(qs) == 0:
        return mono

    candidate: Optional[BigPoly] = None
    if _kronecker_coprime(primitive_part(ps), primitive_part(qs)):
        candidate = mono
    else:
        candidate = _normalize_sign(mul(mono, _gcd_exact(ps, qs)))

    if div_exact(p, candidate) is not None and div_exact(q, candidate) is not None:
        return candidate
    # certificate misfired; redo with the exact path only
    exact = _normalize_sign(mul(mono, _gcd_exact(ps, qs)))
    if div_exact(p, exact) is None or div_exact(q, exact) is None:
        raise AssertionError("gcd candidate fails exact division")
    return exact
