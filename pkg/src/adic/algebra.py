"""Exact scalars, monomials, term orders and multivariate polynomials.

Coefficients live in QQ (``fractions.Fraction``) or in a prime field GF(p)
(plain ``int`` residues in ``[0, p)``).  Polynomials are immutable maps from
exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Sequence, Tuple

Monomial = Tuple[int, ...]


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------- fields


class RationalField:
    """The field QQ of rational numbers."""

    name = "QQ"
    characteristic = 0

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise AlgebraError(f"cannot coerce {x!r} into QQ")

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in QQ")
        return Fraction(a) / b

    def inv(self, a):
        return self.div(1, a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) with residues stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise AlgebraError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------- monomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient ``a / b``; caller guarantees ``b | a``."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a: Monomial) -> int:
    return sum(a)


def monomial_ops(m1: Monomial, m2: Monomial) -> dict:
    """Divisibility, quotient and lcm of two monomials of equal length."""
    if len(m1) != len(m2):
        raise AlgebraError("monomial length mismatch")
    divides = mono_divides(m1, m2)
    return {
        "divides": divides,
        "quotient": mono_div(m2, m1) if divides else None,
        "lcm": mono_lcm(m1, m2),
    }


# ---------------------------------------------------------------- term orders


@lru_cache(maxsize=None)
def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m: Monomial):
    return m


class TermOrder:
    """A monomial order; ``key`` maps a monomial to a sortable tuple (larger is bigger)."""

    KINDS = ("lex", "grevlex")

    def __init__(self, kind: str = "grevlex"):
        if kind not in self.KINDS:
            raise AlgebraError(f"unknown term order {kind!r}")
        self.kind = kind
        self.key = _grevlex_key if kind == "grevlex" else _lex_key

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return self.kind


# ---------------------------------------------------------------- polynomial ring


class PolynomialRing:
    """K[x_1..x_n] with a fixed term order."""

    def __init__(self, field, names: Sequence[str], order: str | TermOrder = "grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise AlgebraError("variable names must be distinct")
        if not names:
            raise AlgebraError("at least one variable is required")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order if isinstance(order, TermOrder) else TermOrder(order)
        self._one_mono = (0,) * self.nvars

    # construction helpers
    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise AlgebraError("ring mismatch")
            return value
        if isinstance(value, str):
            from .dsl import parse_polynomial

            return parse_polynomial(value, self)
        return self.constant(value)

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial(self, {self._one_mono: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, i: int) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.coerce(1)})

    def monomial(self, exps: Monomial, c=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise AlgebraError("monomial length mismatch")
        c = self.field.coerce(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Dict[Monomial, object]) -> "Polynomial":
        F = self.field
        clean = {}
        for m, c in terms.items():
            c = F.coerce(c)
            if c:
                clean[tuple(m)] = c
        return Polynomial(self, clean)

    def extend(self, extra: Sequence[str]) -> "PolynomialRing":
        """The ring with additional variables appended (same field and order kind)."""
        return PolynomialRing(self.field, self.names + tuple(extra), self.order.kind)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and other.field == self.field
            and other.names == self.names
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}] order {self.order!r}"


class Polynomial:
    """Immutable multivariate polynomial; ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._one_mono in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring._one_mono, self.ring.field.coerce(0))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.order.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monomials(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms, key=self.ring.order.key, reverse=True))

    # arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise AlgebraError("ring mismatch")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out.get(m, 0), c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.ring.field
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = F.add(out.get(m, 0), F.mul(c1, c2))
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise AlgebraError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F.coerce(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return format_terms(self.terms, self.ring)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ring != g.ring:
        raise AlgebraError("ring mismatch")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise AlgebraError(f"unknown operation {op!r}")


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for e, n in zip(m, names):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_terms(terms: Dict[Monomial, object], ring: PolynomialRing) -> str:
    if not terms:
        return "0"
    out = []
    for m in sorted(terms, key=ring.order.key, reverse=True):
        c = terms[m]
        if isinstance(ring.field, PrimeField) and c > ring.field.p // 2:
            c = c - ring.field.p
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m, ring.names)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class FreeElement:
    """An element of the free module R^r, given by its component polynomials."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolynomialRing, components: Iterable[Polynomial]):
        comps = tuple(ring(c) for c in components)
        self.ring = ring
        self.components = comps

    @property
    def rank(self) -> int:
        return len(self.components)

    def to_vec(self) -> dict:
        vec = {}
        for i, p in enumerate(self.components):
            for m, c in p.terms.items():
                vec[(i, m)] = c
        return vec

    @classmethod
    def from_vec(cls, ring: PolynomialRing, rank: int, vec: dict) -> "FreeElement":
        comps = [dict() for _ in range(rank)]
        for (i, m), c in vec.items():
            comps[i][m] = c
        return cls(ring, [Polynomial(ring, d) for d in comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        self._same(other)
        return FreeElement(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._same(other)
        return FreeElement(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __rmul__(self, f):
        f = self.ring(f)
        return FreeElement(self.ring, [f * c for c in self.components])

    def _same(self, other):
        if other.ring != self.ring or other.rank != self.rank:
            raise AlgebraError("ambient free module mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, FreeElement)
            and other.ring == self.ring
            and other.components == self.components
        )

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"
