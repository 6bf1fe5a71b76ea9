"""Univariate polynomials over GF(q) and their complete factorization.

Factorization runs squarefree decomposition, distinct-degree splitting and
then Cantor-Zassenhaus equal-degree splitting (trace variant in
characteristic 2).  The randomized step draws from a caller-supplied
``numpy.random.Generator``; omitting it means seed 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConstantInput,
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    NotMonic,
)
from .gfield import FieldElement, FiniteField

MAX_DEGREE = 64


class Polynomial:
    """Coefficients constant term first; the zero polynomial has no coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable = ()):
        cs = [field.elem(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def x(cls, field: FiniteField) -> "Polynomial":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: FiniteField, c) -> "Polynomial":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        inv = self.lead.inverse()
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.field, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (FieldElement, int)):
            c = self.field.elem(other)
            return Polynomial(self.field, [a * c for a in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dg = other.degree
        inv = other.lead.inverse()
        quot = [self.field.zero] * max(len(rem) - dg, 0)
        while len(rem) - 1 >= dg and rem:
            c = rem[-1] * inv
            shift = len(rem) - 1 - dg
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial.constant(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self) -> "Polynomial":
        return Polynomial(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> FieldElement:
        x = self.field.elem(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def sort_key(self) -> tuple:
        return (self.degree, tuple(c.code for c in reversed(self.coeffs)))

    def to_json(self) -> list:
        if self.field.k == 1:
            return [c.coords[0] for c in self.coeffs]
        return [list(c.coords) for c in self.coeffs]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(c)
            if i and c == self.field.one:
                cs = ""
            elif i and "+" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(cs + mono if cs or mono else "1")
        return " + ".join(terms)


@dataclass(frozen=True)
class FactorList:
    factors: tuple[tuple[Polynomial, int], ...]
    unit: FieldElement

    def expand(self) -> Polynomial:
        F = self.unit.field
        out = Polynomial.constant(F, self.unit)
        for g, e in self.factors:
            out = out * g**e
        return out

    def __len__(self) -> int:
        return len(self.factors)


def _same_field(f: Polynomial, g: Polynomial) -> None:
    if f.field != g.field:
        raise FieldMismatch(f"{f.field!r} vs {g.field!r}")


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_divmod(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    return divmod(f, g)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    _same_field(f, g)
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_iterate(h: Polynomial, times: int, f: Polynomial) -> Polynomial:
    q = f.field.q
    for _ in range(times):
        h = h.powmod(q, f)
    return h


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test."""
    if f.degree < 1:
        raise ConstantInput("irreducibility of a constant is undefined")
    if not f.is_monic():
        raise NotMonic(repr(f))
    n = f.degree
    x = Polynomial.x(f.field)
    if _frobenius_iterate(x, n, f) != x % f:
        return False
    for r in _prime_divisors(n):
        h = _frobenius_iterate(x, n // r, f)
        if poly_gcd(h - x, f).degree != 0:
            return False
    return True


def _pth_root(f: Polynomial) -> Polynomial:
    """g with g^p = f, for f whose derivative vanishes."""
    F = f.field
    p = F.p
    root_exp = F.q // p  # a -> a^(q/p) inverts a -> a^p on GF(q)
    return Polynomial(F, [f.coeffs[i] ** root_exp for i in range(0, len(f.coeffs), p)])


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Pairwise coprime squarefree monic parts s_i with f = prod s_i^{e_i}."""
    f = f.monic()
    if f.degree < 1:
        return []
    p = f.field.p
    out: list[tuple[Polynomial, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, e * p) for g, e in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    out = []
    x = Polynomial.x(f.field)
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(f.field.q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(F: FiniteField, below: int, rng: np.random.Generator) -> Polynomial:
    codes = rng.integers(0, F.q, size=below)
    return Polynomial(F, [F.from_code(int(c)) for c in codes])


def equal_degree(f: Polynomial, d: int, rng: np.random.Generator) -> list[Polynomial]:
    """Irreducible factors of f, all of degree d (f squarefree monic)."""
    if f.degree == d:
        return [f]
    F = f.field
    while True:
        h = _random_poly(F, f.degree, rng)
        if h.degree < 1:
            continue
        if F.p == 2:
            # absolute trace GF(q^d) -> F_2
            t = h % f
            acc = t
            for _ in range(F.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            u = poly_gcd(f, acc)
        else:
            e = (F.q**d - 1) // 2
            u = poly_gcd(f, h.powmod(e, f) - Polynomial.constant(F, 1))
        if 0 < u.degree < f.degree:
            return equal_degree(u, d, rng) + equal_degree(f // u, d, rng)


def factor(f: Polynomial, rng: np.random.Generator | None = None) -> FactorList:
    if f.degree < 1:
        raise ConstantInput("cannot factor a constant")
    if f.degree > MAX_DEGREE:
        raise DegreeTooLarge(f"degree {f.degree} exceeds {MAX_DEGREE}")
    if rng is None:
        rng = np.random.default_rng(0)
    unit = f.lead
    pieces = []
    for part, e in squarefree_decomposition(f):
        for g, d in distinct_degree(part):
            for h in equal_degree(g, d, rng):
                pieces.append((h, e))
    pieces.sort(key=lambda t: t[0].sort_key())
    return FactorList(tuple(pieces), unit)


def poly_from_ints(F: FiniteField, coeffs: Sequence) -> Polynomial:
    return Polynomial(F, coeffs)
