"""The coefficient tower: exact rational functions in nu, c and periodic
generators, with the shift and derivation operators and a numeric embedding.

A tower is Q(alpha)(c)(u_1, ..., u_m)(nu).  The shift tau sends nu to nu+1
and scales each generator u by its declared root of unity omega; the
derivation D sends nu to 1, kills c and the scalars, and sends u to
lambda*c*u.  Numerically c embeds as 2*pi*i and u as exp(2*pi*i*lambda*nu),
so omega must equal exp(2*pi*i*lambda); the constructor checks this.

Elements are reduced fractions of multivariate polynomials with a monic
denominator under the graded-lex order (nu > c > u_1 > ... > u_m), which
makes equality a syntactic comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .polys import Poly, derivative, exact_div, monic, poly_gcd, shift_nu
from .scalars import ScalarElement, ScalarField

POLE_THRESHOLD = 1e-12
EMBED_CHECK_TOL = 1e-9
TWO_PI_I = 2j * math.pi

RESERVED_NAMES = {"nu", "c", "t", "tau", "alpha"}


class PoleError(ArithmeticError):
    """Numeric evaluation hit (or came within threshold of) a pole."""


class TowerMismatchError(ValueError):
    """Operands belong to different towers."""


@dataclass(frozen=True)
class GeneratorSpec:
    """One periodic generator: tau(u) = omega*u, D(u) = rate*c*u."""

    name: str
    omega: object  # ScalarElement, or int/Fraction coerced at tower build
    rate: Fraction


@dataclass(frozen=True)
class TowerSpec:
    scalar: ScalarField
    generators: tuple = ()
    unity_bound: int = 24


def make_tower(spec: TowerSpec) -> "TowerHandle":
    """Validate a tower spec and return the immutable arithmetic handle."""
    return TowerHandle(spec)


class TowerHandle:
    """All arithmetic, shift, derivation and evaluation for one tower."""

    def __init__(self, spec: TowerSpec):
        self.scalar = spec.scalar
        self.unity_bound = spec.unity_bound
        gens = []
        seen = set()
        for g in spec.generators:
            omega = g.omega
            if not isinstance(omega, ScalarElement):
                omega = self.scalar.from_rational(Fraction(omega))
            if omega.field != self.scalar:
                raise ValueError(f"generator {g.name}: omega not in the scalar field")
            rate = Fraction(g.rate)
            if g.name in RESERVED_NAMES or g.name in seen:
                raise ValueError(f"generator name {g.name!r} reserved or duplicated")
            if not g.name.isidentifier():
                raise ValueError(f"generator name {g.name!r} is not an identifier")
            order = omega.unity_order(spec.unity_bound)
            if order is None:
                raise ValueError(
                    f"generator {g.name}: omega is not a root of unity within bound"
                )
            drift = abs(omega.embed() - cmath.exp(TWO_PI_I * float(rate)))
            if drift > EMBED_CHECK_TOL:
                raise ValueError(
                    f"generator {g.name}: omega and rate disagree under the "
                    f"numeric embedding (|omega - exp(2*pi*i*rate)| = {drift:.2e})"
                )
            seen.add(g.name)
            gens.append(GeneratorSpec(g.name, omega, rate))
        self.generators = tuple(gens)
        self.var_names = ("nu", "c") + tuple(g.name for g in self.generators)
        self.nvars = len(self.var_names)

    # -- element constructors -------------------------------------------------

    def _wrap(self, num: Poly, den: Poly) -> "TowerElement":
        return TowerElement(self, num, den, _normalized=False)

    def constant(self, value) -> "TowerElement":
        num = Poly.constant(self.scalar, self.nvars, value)
        return TowerElement(self, num, self._one_poly(), _normalized=True)

    def scalar_element(self, s: ScalarElement) -> "TowerElement":
        return self.constant(s)

    def _one_poly(self) -> Poly:
        return Poly.constant(self.scalar, self.nvars, 1)

    @property
    def zero(self) -> "TowerElement":
        return self.constant(0)

    @property
    def one(self) -> "TowerElement":
        return self.constant(1)

    @property
    def nu(self) -> "TowerElement":
        return TowerElement(
            self, Poly.variable(self.scalar, self.nvars, 0), self._one_poly(), _normalized=True
        )

    @property
    def c(self) -> "TowerElement":
        return TowerElement(
            self, Poly.variable(self.scalar, self.nvars, 1), self._one_poly(), _normalized=True
        )

    def gen(self, name: str) -> "TowerElement":
        for i, g in enumerate(self.generators):
            if g.name == name:
                return TowerElement(
                    self,
                    Poly.variable(self.scalar, self.nvars, 2 + i),
                    self._one_poly(),
                    _normalized=True,
                )
        raise KeyError(f"no generator named {name!r}")

    def symbol(self, name: str) -> "TowerElement":
        if name == "nu":
            return self.nu
        if name == "c":
            return self.c
        if name == "alpha" and self.scalar.degree > 1:
            return self.scalar_element(self.scalar.alpha)
        return self.gen(name)

    def has_symbol(self, name: str) -> bool:
        if name in ("nu", "c"):
            return True
        if name == "alpha":
            return self.scalar.degree > 1
        return any(g.name == name for g in self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, TowerHandle)
            and self.scalar == other.scalar
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.scalar, self.generators))

    def __repr__(self):
        gens = ",".join(g.name for g in self.generators)
        return f"TowerHandle(gens=[{gens}])"


class TowerElement:
    """Reduced fraction of polynomials; immutable and hashable."""

    __slots__ = ("tower", "num", "den")

    def __init__(self, tower: TowerHandle, num: Poly, den: Poly, _normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _reduce(num, den)
        self.tower = tower
        self.num = num
        self.den = den

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.tower != self.tower:
                raise TowerMismatchError("elements from different towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.constant(other)
        if isinstance(other, ScalarElement):
            return self.tower.scalar_element(other)
        return NotImplemented

    # -- field arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = self.num * other.den + other.num * self.den
        return TowerElement(self.tower, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, -self.num, self.den, _normalized=True)

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
        return TowerElement(self.tower, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero tower element")
        return TowerElement(self.tower, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return (self.tower.one / self) ** (-n)
        acc = self.tower.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self) -> "TowerElement":
        return self.tower.one / self

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_tau_fixed(self) -> bool:
        """Syntactic membership in k: no nu, and only omega = 1 generators."""
        for p in (self.num, self.den):
            if p.uses_var(0):
                return False
            for i, g in enumerate(self.tower.generators):
                if not g.omega.is_one() and p.uses_var(2 + i):
                    return False
        return True

    def as_rational(self) -> Fraction | None:
        if not (self.num.is_constant() and self.den.is_constant()):
            return None
        n = self.num.constant_value()
        d = self.den.constant_value()
        if not (n.is_rational() and d.is_rational()):
            return None
        return n.as_rational() / d.as_rational()

    def as_integer(self) -> int | None:
        q = self.as_rational()
        if q is not None and q.denominator == 1:
            return int(q)
        return None

    # -- tower operators -----------------------------------------------------

    def shift(self, steps: int = 1) -> "TowerElement":
        """Apply tau**steps; steps may be negative (the tower is inversive)."""
        if steps == 0:
            return self
        num = _shift_poly(self.tower, self.num, steps)
        den = _shift_poly(self.tower, self.den, steps)
        # an automorphism preserves coprimality; only re-scale the denominator
        lc = den.leading_coeff()
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        return TowerElement(self.tower, num, den, _normalized=True)

    def derive(self) -> "TowerElement":
        """Apply D with D(nu) = 1, D(c) = 0, D(u) = rate*c*u."""
        dn = _derive_poly(self.tower, self.num)
        dd = _derive_poly(self.tower, self.den)
        num = dn * self.den - self.num * dd
        return TowerElement(self.tower, num, self.den * self.den)

    def eval_embedded(self, nu: complex) -> complex:
        """Evaluate at nu with c = 2*pi*i and u = exp(2*pi*i*rate*nu)."""
        values = [complex(nu), TWO_PI_I]
        for g in self.tower.generators:
            values.append(cmath.exp(TWO_PI_I * float(g.rate) * complex(nu)))
        nv = self.num.eval_complex(values)
        dv = self.den.eval_complex(values)
        if abs(dv) < POLE_THRESHOLD * (1 + abs(nv)):
            raise PoleError(f"denominator vanishes near nu = {nu}")
        return nv / dv

    # -- equality / hashing / printing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ScalarElement)):
            other = self._coerce(other)
        if not isinstance(other, TowerElement):
            return NotImplemented
        return (
            self.tower == other.tower
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"TowerElement({self.text()})"

    def text(self) -> str:
        from .textio import element_text

        return element_text(self)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.constant(den.field, den.nvars, 1)
    g = poly_gcd(num, den)
    if not g.is_one():
        num = exact_div(num, g)
        den = exact_div(den, g)
    lc = den.leading_coeff()
    if not lc.is_one():
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _shift_poly(tower: TowerHandle, p: Poly, steps: int) -> Poly:
    omega_pows = [g.omega**steps for g in tower.generators]

    def act(m, cv):
        for i, w in enumerate(omega_pows):
            e = m[2 + i]
            if e:
                cv = cv * (w**e)
        return m, cv

    scaled = p.map_terms(act)
    return shift_nu(scaled, 0, steps)


def _derive_poly(tower: TowerHandle, p: Poly) -> Poly:
    acc = derivative(p, 0)  # d/dnu part
    for i, g in enumerate(tower.generators):
        if g.rate == 0:
            continue
        # D(u^e) = rate*e * c * u^e: keep the monomial, add a factor of c
        part = p.map_terms(
            lambda m, cv, i=i, rate=g.rate: (
                (m[:1] + (m[1] + 1,) + m[2:]),
                cv * (rate * m[2 + i]),
            )
        )
        acc = acc + part
    return acc


def arith(x: TowerElement, y: TowerElement, op: str) -> TowerElement:
    """Named field arithmetic entry point: op in add|sub|mul|div."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def shift(x: TowerElement, steps: int = 1) -> TowerElement:
    return x.shift(steps)


def derive(x: TowerElement) -> TowerElement:
    return x.derive()


def eval_embedded(x: TowerElement, nu: complex) -> complex:
    return x.eval_embedded(nu)


def rationals_tower(*gens: GeneratorSpec, unity_bound: int = 24) -> TowerHandle:
    """Convenience: tower over plain Q with the given generators."""
    return make_tower(TowerSpec(ScalarField.rationals(), tuple(gens), unity_bound))
