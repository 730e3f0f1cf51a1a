"""Exact arithmetic in the scalar coefficient field Q(alpha).

The scalar field is Q[alpha]/(m(alpha)) for a monic irreducible modulus m
with rational coefficients.  Degree-one moduli give plain rationals.  Every
element is a residue polynomial in alpha, stored dense with Fraction
coefficients, always reduced below deg(m).  A chosen complex root of the
modulus provides the numeric embedding used by the analytic layer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class ReducibleModulusError(ValueError):
    """The declared scalar modulus factors over the rationals."""


def _fractions(coeffs: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coeffs)


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _poly_divmod(a, b):
    # b nonzero; coefficients are Fractions (a field), so plain long division
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(_trim(a)) - 1 >= db and a:
        a = list(_trim(a))
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        f = a[-1] / lb
        q[k] = f
        for i, bi in enumerate(b):
            a[k + i] -= f * bi
    return _trim(q), _trim(a)


def _poly_xgcd(a, b):
    # returns (g, s, t) with s*a + t*b = g, g monic or zero
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _trim([x - y for x, y in _zip_sub(s0, _poly_mul(q, s1))])
        t0, t1 = t1, _trim([x - y for x, y in _zip_sub(t0, _poly_mul(q, t1))])
    if r0:
        lc = r0[-1]
        r0 = tuple(c / lc for c in r0)
        s0 = tuple(c / lc for c in s0)
        t0 = tuple(c / lc for c in t0)
    return r0, s0, t0


def _zip_sub(a, b):
    n = max(len(a), len(b))
    for i in range(n):
        x = a[i] if i < len(a) else Fraction(0)
        y = b[i] if i < len(b) else Fraction(0)
        yield x, y


def _is_irreducible_over_q(modulus: Sequence[Fraction]) -> bool:
    """Decide irreducibility of a monic rational polynomial.

    Any nontrivial factorization contains a factor of degree at most half the
    total, so a complete factorization gives the same verdict as trial
    factorization up to that bound; sympy provides it exactly.
    """
    import sympy

    if len(modulus) - 1 <= 1:
        return True
    x = sympy.Symbol("x")
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(modulus)],
        x,
        domain="QQ",
    )
    _, factors = poly.factor_list()
    return len(factors) == 1 and factors[0][1] == 1


class ScalarField:
    """Number field Q[alpha]/(m) with a distinguished complex root of m."""

    def __init__(self, modulus: Iterable, root_index: int = 0):
        mod = _fractions(modulus)
        mod = _trim(mod)
        if len(mod) < 2:
            raise ValueError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _is_irreducible_over_q(mod):
            raise ReducibleModulusError(
                "scalar modulus is reducible over the rationals"
            )
        self.modulus = mod
        self.degree = len(mod) - 1
        self._root = self._refine_root(root_index)

    @staticmethod
    def rationals() -> "ScalarField":
        """The degree-one field: plain exact rationals (alpha = 0)."""
        return ScalarField([0, 1])

    def _refine_root(self, root_index: int) -> complex:
        if self.degree == 1:
            return complex(-self.modulus[0])
        coeffs = [float(c) for c in reversed(self.modulus)]
        roots = sorted(np.roots(coeffs), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
        if not 0 <= root_index < len(roots):
            raise ValueError("root_index out of range")
        z = complex(roots[root_index])
        dmod = [i * c for i, c in enumerate(self.modulus)][1:]
        for _ in range(60):
            fz = self._poly_at(self.modulus, z)
            dz = self._poly_at(dmod, z)
            if dz == 0:
                break
            step = fz / dz
            z -= step
            if abs(step) < 1e-16 * (1 + abs(z)):
                break
        return z

    @staticmethod
    def _poly_at(coeffs, z: complex) -> complex:
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + complex(c)
        return acc

    # -- element constructors ------------------------------------------------

    def element(self, coeffs: Iterable) -> "ScalarElement":
        c = list(_fractions(coeffs))
        if len(c) > self.degree:
            _, c = _poly_divmod(tuple(c), self.modulus)
            c = list(c)
        c += [Fraction(0)] * (self.degree - len(c))
        return ScalarElement(self, tuple(c))

    def from_rational(self, q) -> "ScalarElement":
        return self.element([Fraction(q)])

    @property
    def zero(self) -> "ScalarElement":
        return self.from_rational(0)

    @property
    def one(self) -> "ScalarElement":
        return self.from_rational(1)

    @property
    def alpha(self) -> "ScalarElement":
        return self.element([0, 1])

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("ScalarField", self.modulus))

    def __repr__(self):
        return f"ScalarField(deg={self.degree})"


class ScalarElement:
    """Residue polynomial in alpha; immutable, exact."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ScalarField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, ScalarElement):
            if other.field != self.field:
                raise ValueError("scalar field mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ScalarElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return ScalarElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prod = _poly_mul(_trim(self.coeffs), _trim(other.coeffs))
        _, rem = _poly_divmod(prod, self.field.modulus)
        return self.field.element(rem)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarElement":
        if self.is_zero():
            raise ZeroDivisionError("scalar zero has no inverse")
        g, s, _ = _poly_xgcd(_trim(self.coeffs), self.field.modulus)
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible (modulus reducible?)")
        inv = tuple(c / g[0] for c in s)
        return self.field.element(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction | None:
        return self.coeffs[0] if self.is_rational() else None

    def unity_order(self, bound: int) -> int | None:
        """Smallest n <= bound with self**n == 1, or None."""
        acc = self.field.one
        for n in range(1, bound + 1):
            acc = acc * self
            if acc.is_one():
                return n
        return None

    def embed(self) -> complex:
        return ScalarField._poly_at(self.coeffs, self.field._root)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (
            isinstance(other, ScalarElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"ScalarElement({self.coeffs})"

    def text(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*alpha" if c != 1 else "alpha")
            else:
                parts.append(f"{c}*alpha^{i}" if c != 1 else f"alpha^{i}")
        return " + ".join(parts) if parts else "0"
