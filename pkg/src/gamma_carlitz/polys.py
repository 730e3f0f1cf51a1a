"""Sparse multivariate polynomials over a scalar field.

Monomials are exponent tuples over a fixed variable list; terms live in a
dict keyed by monomial.  The monomial order is graded lexicographic with the
first variable largest, which fixes leading terms, canonical (monic) scaling
and hence decidable equality for the fraction field built on top.

The gcd is the primitive polynomial-remainder-sequence algorithm, recursing
on the main variable with content extraction; coefficients bottom out in the
scalar field where gcd is trivial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .scalars import ScalarElement, ScalarField


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Poly:
    """Immutable sparse polynomial; `terms` maps exponent tuples to nonzero
    scalar elements."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: ScalarField, nvars: int, terms: dict):
        self.field = field
        self.nvars = nvars
        self.terms = terms

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(field: ScalarField, nvars: int) -> "Poly":
        return Poly(field, nvars, {})

    @staticmethod
    def constant(field: ScalarField, nvars: int, value) -> "Poly":
        if not isinstance(value, ScalarElement):
            value = field.from_rational(Fraction(value))
        if value.is_zero():
            return Poly.zero(field, nvars)
        return Poly(field, nvars, {(0,) * nvars: value})

    @staticmethod
    def variable(field: ScalarField, nvars: int, index: int) -> "Poly":
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return Poly(field, nvars, {exps: field.one})

    def _new(self, terms: dict) -> "Poly":
        return Poly(self.field, self.nvars, terms)

    # -- predicates and views --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_value(self) -> ScalarElement:
        zero_mon = (0,) * self.nvars
        return self.terms.get(zero_mon, self.field.zero)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.constant_value().is_one()

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=0)

    def uses_var(self, var: int) -> bool:
        return any(m[var] > 0 for m in self.terms)

    def leading_monomial(self) -> tuple[int, ...]:
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> ScalarElement:
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return self._new(terms)

    def __neg__(self) -> "Poly":
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field, self.nvars)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = terms.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return self._new(terms)

    def scale(self, c: ScalarElement) -> "Poly":
        if c.is_zero():
            return Poly.zero(self.field, self.nvars)
        return self._new({m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = Poly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- structure ops -------------------------------------------------------

    def map_terms(self, fn) -> "Poly":
        """Apply fn(monomial, coeff) -> (monomial, coeff); merge results."""
        terms: dict = {}
        for m, c in self.terms.items():
            nm, nc = fn(m, c)
            if nc.is_zero():
                continue
            s = terms.get(nm)
            s = nc if s is None else s + nc
            if s.is_zero():
                terms.pop(nm, None)
            else:
                terms[nm] = s
        return self._new(terms)

    def eval_complex(self, values: Iterable[complex]) -> complex:
        vals = list(values)
        acc = 0j
        for m, c in self.terms.items():
            term = c.embed()
            for v, e in zip(vals, m):
                if e:
                    term *= v**e
            acc += term
        return acc


def monic(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return p.scale(p.leading_coeff().inverse())


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Single-divisor division with remainder under the grlex order."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = Poly.zero(a.field, a.nvars)
    r = a
    lb = b.leading_monomial()
    lbc = b.leading_coeff()
    while not r.is_zero():
        lr = r.leading_monomial()
        if all(er >= eb for er, eb in zip(lr, lb)):
            m = tuple(er - eb for er, eb in zip(lr, lb))
            c = r.terms[lr] * lbc.inverse()
            t = Poly(a.field, a.nvars, {m: c})
            q = q + t
            r = r - t * b
        else:
            break
    return q, r


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod_poly(a, b)
    if not r.is_zero():
        raise ArithmeticError("exact division has a remainder")
    return q


def _to_univar(p: Poly, var: int) -> dict[int, Poly]:
    """View p as univariate in `var` with coefficients free of `var`."""
    out: dict[int, Poly] = {}
    for m, c in p.terms.items():
        d = m[var]
        rest = m[:var] + (0,) + m[var + 1 :]
        coeff = out.get(d)
        if coeff is None:
            coeff = Poly.zero(p.field, p.nvars)
        out[d] = coeff + Poly(p.field, p.nvars, {rest: c})
    return {d: c for d, c in out.items() if not c.is_zero()}


def _from_univar(coeffs: dict[int, Poly], var: int, field, nvars) -> Poly:
    acc = Poly.zero(field, nvars)
    for d, c in coeffs.items():
        shifted = c.map_terms(
            lambda m, cv, d=d: (m[:var] + (m[var] + d,) + m[var + 1 :], cv)
        )
        acc = acc + shifted
    return acc


def _content(coeffs: Iterable[Poly], field, nvars) -> Poly:
    g = Poly.zero(field, nvars)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_one():
            return g
    return g


def _pseudo_rem(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        nr: dict[int, Poly] = {}
        for d, c in r.items():
            if d == dr:
                continue
            nr[d] = c * lb
        for d, c in b.items():
            if d == db:
                continue
            nd = d + dr - db
            prev = nr.get(nd)
            term = lr * c
            nr[nd] = (prev - term) if prev is not None else -term
        r = {d: c for d, c in nr.items() if not c.is_zero()}
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Gcd normalized to have leading coefficient one (grlex)."""
    if a.is_zero():
        return monic(b)
    if b.is_zero():
        return monic(a)
    field, nvars = a.field, a.nvars
    active = [v for v in range(nvars) if a.uses_var(v) or b.uses_var(v)]
    if not active:
        return Poly.constant(field, nvars, 1)
    var = active[0]
    ua, ub = _to_univar(a, var), _to_univar(b, var)
    ca = _content(ua.values(), field, nvars)
    cb = _content(ub.values(), field, nvars)
    cont = poly_gcd(ca, cb)
    pa = {d: exact_div(c, ca) for d, c in ua.items()}
    pb = {d: exact_div(c, cb) for d, c in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        pr = _pseudo_rem(pa, pb)
        if pr:
            c = _content(pr.values(), field, nvars)
            pr = {d: exact_div(v, c) for d, v in pr.items()}
        pa, pb = pb, pr
    # the last remainder still carries content picked up from pseudo-division
    cp = _content(pa.values(), field, nvars)
    pa = {d: exact_div(c, cp) for d, c in pa.items()}
    prim = _from_univar(pa, var, field, nvars)
    return monic(cont * prim)


def derivative(p: Poly, var: int) -> Poly:
    terms: dict = {}
    for m, c in p.terms.items():
        e = m[var]
        if e == 0:
            continue
        nm = m[:var] + (e - 1,) + m[var + 1 :]
        nc = c * e
        s = terms.get(nm)
        s = nc if s is None else s + nc
        if s.is_zero():
            terms.pop(nm, None)
        else:
            terms[nm] = s
    return Poly(p.field, p.nvars, terms)


def shift_nu(p: Poly, nu_index: int, steps: int) -> Poly:
    """Substitute nu -> nu + steps (binomial expansion per term)."""
    from math import comb

    if steps == 0:
        return p
    acc = Poly.zero(p.field, p.nvars)
    for m, c in p.terms.items():
        e = m[nu_index]
        if e == 0:
            acc = acc + Poly(p.field, p.nvars, {m: c})
            continue
        for k in range(e + 1):
            coeff = c * (comb(e, k) * steps ** (e - k))
            if coeff.is_zero():
                continue
            nm = m[:nu_index] + (k,) + m[nu_index + 1 :]
            acc = acc + Poly(p.field, p.nvars, {nm: coeff})
    return acc
