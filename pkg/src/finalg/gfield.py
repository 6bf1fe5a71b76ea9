"""Finite fields GF(p^k) as F_p[t]/(m(t)).

Elements are residue vectors of length ``k`` (constant term first).  Besides
the scalar :class:`FieldElement` API, every field offers vectorized helpers
acting on integer *codes* ``sum(c_i * p**i)`` stored in numpy arrays; the
algebra layer uses those for batch arithmetic.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BadSubfieldSize,
    DegreeZero,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NonPrime,
)

MAX_FIELD_SIZE = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- raw residue-list polynomial helpers over F_p (constant term first) ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _rem_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int) -> Iterator[tuple[int, ...]]:
    """Monic degree-d polynomials in lexicographic order of (c_0, ..., c_{d-1})."""
    for lower in itertools.product(range(p), repeat=d):
        yield tuple(lower) + (1,)


def _is_irreducible_trial(f: Sequence[int], p: int) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _rem_mod_p(f, g, p):
                return False
    return True


class FiniteField:
    """GF(p^k) with an explicit monic irreducible modulus.

    Use :func:`ff_make` for the canonical (lexicographically least) modulus.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NonPrime(p)
        if k < 1:
            raise DegreeZero("extension degree must be >= 1")
        if p**k > MAX_FIELD_SIZE:
            raise FieldTooLarge(f"GF({p}^{k}) exceeds {MAX_FIELD_SIZE} elements")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not _is_irreducible_trial(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p**k
        self._place = np.array([p**i for i in range(k)], dtype=np.int64)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __len__(self) -> int:
        return self.q

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # --- conversions --------------------------------------------------------

    def coords_of(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code_of(self, coords: Sequence[int]) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coords))

    def __call__(self, x) -> "FieldElement":
        return self.elem(x)

    def elem(self, x) -> "FieldElement":
        """Coerce an int (prime-subfield residue), coordinate list or element."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x!r} does not live in {self!r}")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, (int(x) % self.p,) + (0,) * (self.k - 1))
        coords = [int(c) % self.p for c in x]
        if len(coords) > self.k:
            raise ValueError(f"too many coordinates for {self!r}: {list(x)}")
        return FieldElement(self, tuple(coords) + (0,) * (self.k - len(coords)))

    def from_code(self, code: int) -> "FieldElement":
        return FieldElement(self, self.coords_of(int(code)))

    @cached_property
    def zero(self) -> "FieldElement":
        return self.elem(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.elem(1)

    @cached_property
    def gen(self) -> "FieldElement":
        """The class of t; for a prime field this is just the residue of t mod (t)."""
        if self.k == 1:
            return self.elem(-self.modulus[0])
        return self.elem([0, 1])

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield self.from_code(c)

    # --- scalar residue arithmetic ----------------------------------------

    def _mul_coords(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(k):
                    prod[d - k + i] -= c * m[i]
            prod[d] = 0
        return tuple(x % p for x in prod[:k])

    # --- vectorized code arithmetic -----------------------------------------

    @cached_property
    def _reduction(self) -> np.ndarray:
        """R[i, j, :] = residue vector of t^(i+j) mod m."""
        k = self.k
        powers = [self.elem(1).coords]
        t = self.elem([0, 1]).coords if k > 1 else self.elem(0).coords
        for _ in range(2 * k - 2):
            powers.append(self._mul_coords(powers[-1], t))
        red = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                red[i, j] = powers[i + j]
        return red

    def to_digits(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._place) % self.p

    def from_digits(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self._place

    def vadd(self, a, b) -> np.ndarray:
        if self.k == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self.from_digits(self.to_digits(a) + self.to_digits(b))

    def vneg(self, a) -> np.ndarray:
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self.from_digits(-self.to_digits(a))

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        da, db = self.to_digits(a), self.to_digits(b)
        return self.from_digits(np.einsum("...i,...j,ijk->...k", da, db, self._reduction))

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.vmul(result, base)
            base = self.vmul(base, base)
            e >>= 1
        return result

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.vpow(a, self.q - 2)

    def vsum(self, a, axis=-1) -> np.ndarray:
        if self.k == 1:
            return np.asarray(a).sum(axis=axis) % self.p
        return self.from_digits(self.to_digits(a).sum(axis=axis if axis >= 0 else axis - 1))

    def vdot(self, a, b) -> np.ndarray:
        """Sum over the last axis of elementwise products."""
        return self.vsum(self.vmul(a, b), axis=-1)


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    @property
    def code(self) -> int:
        return self.field.code_of(self.coords)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.elem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise DivisionByZero(f"{self!r} has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = self.field.elem(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            coef = "" if (c == 1 and i) else str(c)
            terms.append(coef + mono)
        return "+".join(terms) if terms else "0"


def ff_make(p: int, k: int) -> FiniteField:
    """GF(p^k) with the lexicographically least monic irreducible modulus.

    Coefficients are compared constant term first, so for k = 1 the modulus
    is t and for GF(4) it is t^2 + t + 1.
    """
    if not is_prime(p):
        raise NonPrime(p)
    if k < 1:
        raise DegreeZero("extension degree must be >= 1")
    if p**k > MAX_FIELD_SIZE:
        raise FieldTooLarge(f"GF({p}^{k}) exceeds {MAX_FIELD_SIZE} elements")
    for m in _monic_polys(p, k):
        if _is_irreducible_trial(m, p):
            return _cached_field(p, k, m)
    raise AssertionError("unreachable: irreducibles exist in every degree")


_FIELDS: dict[tuple, FiniteField] = {}


def _cached_field(p, k, modulus) -> FiniteField:
    key = (p, k, tuple(modulus))
    if key not in _FIELDS:
        _FIELDS[key] = FiniteField(p, k, modulus)
    return _FIELDS[key]


def _check(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return a * b


def ff_neg(a: FieldElement) -> FieldElement:
    return -a


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def ff_pow(a: FieldElement, e: int) -> FieldElement:
    return a**e


def frobenius(a: FieldElement, q: int) -> FieldElement:
    """Return a**q, where q must be the size of a subfield of a's field."""
    F = a.field
    d = 0
    size = 1
    while size < q:
        size *= F.p
        d += 1
    if q < F.p or size != q or F.k % d:
        raise BadSubfieldSize(f"{q} is not the size of a subfield of {F!r}")
    return a**q
