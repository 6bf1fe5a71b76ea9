"""Finite-dimensional unital associative algebras given by structure constants.

An :class:`Algebra` over GF(q), q = p^k, of dimension n stores its table
``table[i, j] = e_i * e_j`` as integer field codes.  For arithmetic it also
keeps the restriction of scalars to F_p: a flat ``(n*k)^3`` tensor of
residues, so products of whole batches of elements reduce to one einsum
modulo p.  Every constructor validates associativity and the unit law.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import (
    AlgebraMismatch,
    BadCayleyTable,
    BaseMismatch,
    BudgetExceeded,
    InvalidAugmentation,
    InvalidStructureConstants,
    NonPrimeBase,
    NotATensor,
    NotConnectedEvidence,
    NotMonic,
)
from .gfield import FieldElement, FiniteField, ff_make
from .polyfactor import Polynomial

DEFAULT_BUDGET = 4096


class Algebra:
    """Use the ``alg_*`` constructors rather than instantiating directly."""

    def __init__(
        self,
        base: FiniteField,
        table,
        unit,
        label: str = "",
        augmentations: Iterable = (),
        *,
        tensor_factors: tuple["Algebra", "Algebra"] | None = None,
        parent: tuple["Algebra", np.ndarray] | None = None,
    ):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if n < 1 or table.shape != (n, n, n):
            raise InvalidStructureConstants(f"table must be n x n x n, got {table.shape}")
        if np.any((table < 0) | (table >= base.q)):
            raise InvalidStructureConstants("table entries must be field codes")
        self.base = base
        self.dim = n
        self.table = table
        self.table.setflags(write=False)
        self.unit_codes = np.asarray(unit, dtype=np.int64).reshape(n)
        self.unit_codes.setflags(write=False)
        self.label = label
        self.tensor_factors = tensor_factors
        self.parent = parent
        self._S = self._flat_structure()
        self._check_axioms()
        self.commutative = bool(np.array_equal(self._S, self._S.transpose(1, 0, 2)))
        self.augmentations: list[Augmentation] = []
        for values in augmentations:
            self.augmentations.append(Augmentation(self, values))

    def __repr__(self) -> str:
        name = self.label or "Algebra"
        return f"<{name}: dim {self.dim} over {self.base!r}>"

    # --- flat F_p representation -----------------------------------------

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def flat_dim(self) -> int:
        return self.dim * self.base.k

    @property
    def cardinality(self) -> int:
        return self.base.q**self.dim

    def _flat_structure(self) -> np.ndarray:
        F, n, k = self.base, self.dim, self.base.k
        if k == 1:
            return self.table.copy()
        # t^(u+v) as codes
        tpow = F.from_digits(F._reduction)
        prod = F.vmul(self.table[:, :, :, None, None], tpow[None, None, None, :, :])
        d = F.to_digits(prod)  # i, j, l, u, v, w
        return d.transpose(0, 3, 1, 4, 2, 5).reshape(n * k, n * k, n * k)

    def _check_axioms(self) -> None:
        S, p = self._S, self.p
        left = np.einsum("abc,cde->abde", S, S) % p
        right = np.einsum("bdc,ace->abde", S, S) % p
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise InvalidStructureConstants(f"associativity fails at flat indices {tuple(bad[:3])}")
        u = self.to_flat(self.unit_codes)
        eye = np.eye(self.flat_dim, dtype=np.int64)
        if not (
            np.array_equal(np.einsum("a,abc->bc", u, S) % p, eye)
            and np.array_equal(np.einsum("b,abc->ac", u, S) % p, eye)
        ):
            raise InvalidStructureConstants("unit law fails")

    def to_flat(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        d = self.base.to_digits(codes)
        return d.reshape(codes.shape[:-1] + (self.flat_dim,))

    def from_flat(self, flat) -> np.ndarray:
        flat = np.asarray(flat, dtype=np.int64)
        d = flat.reshape(flat.shape[:-1] + (self.dim, self.base.k))
        return self.base.from_digits(d)

    def mul_flat(self, X, Y) -> np.ndarray:
        """Batched product of flat F_p vectors (broadcasting leading axes)."""
        N, p = self.flat_dim, self.p
        X, Y = np.broadcast_arrays(np.asarray(X, np.int64), np.asarray(Y, np.int64))
        tmp = (X @ self._S.reshape(N, N * N)).reshape(X.shape[:-1] + (N, N)) % p
        return np.einsum("...b,...bc->...c", Y, tmp) % p

    def left_mult_flat(self, X) -> np.ndarray:
        """Flat left-multiplication matrices: result[..., c, b] = (x * f_b)_c."""
        return np.einsum("...a,abc->...cb", np.asarray(X, np.int64), self._S) % self.p

    def enumeration_index(self, flat) -> np.ndarray:
        """Position of each element in :meth:`all_elements_flat` order."""
        place = self.p ** np.arange(self.flat_dim, dtype=np.int64)
        return np.asarray(flat, np.int64) @ place

    def all_elements_flat(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """Every element, ordered by sum(code_i * q^i); BudgetExceeded past budget."""
        size = self.cardinality
        if size > budget:
            raise BudgetExceeded(size, budget)
        idx = np.arange(size, dtype=np.int64)
        return (idx[:, None] // self.p ** np.arange(self.flat_dim, dtype=np.int64)) % self.p

    # --- elements ----------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        """Element from a coordinate list: ints, coordinate lists or FieldElements."""
        if isinstance(coords, AlgebraElement):
            if coords.algebra is not self:
                raise AlgebraMismatch("element belongs to another algebra")
            return coords
        coords = list(coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        codes = [self.base.elem(c).code for c in coords]
        return AlgebraElement(self, self.to_flat(np.array(codes)))

    def from_codes(self, codes) -> "AlgebraElement":
        return AlgebraElement(self, self.to_flat(np.asarray(codes, np.int64)))

    def basis(self, i: int) -> "AlgebraElement":
        codes = np.zeros(self.dim, np.int64)
        codes[i] = 1
        return self.from_codes(codes)

    @property
    def one(self) -> "AlgebraElement":
        return self.from_codes(self.unit_codes)

    @property
    def zero(self) -> "AlgebraElement":
        return self.from_codes(np.zeros(self.dim, np.int64))

    def scalar(self, c) -> "AlgebraElement":
        return self.one * self.base.elem(c)

    def elements(self, budget: int = DEFAULT_BUDGET) -> Iterable["AlgebraElement"]:
        for row in self.all_elements_flat(budget):
            yield AlgebraElement(self, row)

    def random_element(self, rng: np.random.Generator) -> "AlgebraElement":
        return self.from_codes(rng.integers(0, self.base.q, size=self.dim))

    def table_as_json(self) -> list:
        return self.table.tolist()


class AlgebraElement:
    __slots__ = ("algebra", "_v")

    def __init__(self, algebra: Algebra, flat):
        v = np.asarray(flat, dtype=np.int64) % algebra.p
        v.setflags(write=False)
        self.algebra = algebra
        self._v = v

    @property
    def flat(self) -> np.ndarray:
        return self._v

    @property
    def codes(self) -> np.ndarray:
        return self.algebra.from_flat(self._v)

    @property
    def coords(self) -> tuple[FieldElement, ...]:
        F = self.algebra.base
        return tuple(F.from_code(int(c)) for c in self.codes)

    def to_json(self) -> list:
        F = self.algebra.base
        if F.k == 1:
            return [int(c) for c in self.codes]
        return [list(F.coords_of(int(c))) for c in self.codes]

    def _same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.algebra.scalar(other)
        self._same(other)
        return AlgebraElement(self.algebra, self._v + other._v)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, -self._v)

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        A = self.algebra
        if isinstance(other, (int, np.integer, FieldElement)):
            c = A.base.elem(other).code
            return A.from_codes(A.base.vmul(c, self.codes))
        self._same(other)
        return AlgebraElement(A, A.mul_flat(self._v, other._v))

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer, FieldElement)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.algebra.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not self._v.any()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and np.array_equal(self._v, other._v)

    def __hash__(self) -> int:
        return hash((id(self.algebra), self._v.tobytes()))

    def __repr__(self) -> str:
        return f"{self.algebra.label or 'A'}{self.to_json()}"


@dataclass(frozen=True)
class PowerCycle:
    preperiod: int
    period: int
    s: int

    @property
    def exponent(self) -> int:
        return self.s * self.period


@dataclass(frozen=True)
class SubspaceBasis:
    """RREF basis of a subspace of an algebra."""

    algebra: Algebra
    vectors: tuple[AlgebraElement, ...]

    @classmethod
    def from_codes(cls, A: Algebra, rows) -> "SubspaceBasis":
        rows = linalg.row_basis(rows, A.base, A.dim)
        return cls(A, tuple(A.from_codes(r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        if not self.vectors:
            return np.zeros((0, self.algebra.dim), np.int64)
        return np.array([v.codes for v in self.vectors], dtype=np.int64)

    def __contains__(self, x: AlgebraElement) -> bool:
        M = self.matrix()
        return linalg.coordinates(M, linalg.pivots_of(M), x.codes, self.algebra.base) is not None

    def coordinates(self, x: AlgebraElement) -> np.ndarray | None:
        M = self.matrix()
        return linalg.coordinates(M, linalg.pivots_of(M), x.codes, self.algebra.base)

    def elements(self, budget: int = DEFAULT_BUDGET) -> list[AlgebraElement]:
        """All elements of the span (enumerated)."""
        A = self.algebra
        q = A.base.q
        if q**self.dim > budget:
            raise BudgetExceeded(q**self.dim, budget)
        M = self.matrix()
        out = []
        for combo in itertools.product(range(q), repeat=self.dim):
            c = np.array(combo, np.int64)
            codes = A.base.vsum(A.base.vmul(c[:, None], M), axis=0) if self.dim else np.zeros(A.dim, np.int64)
            out.append(A.from_codes(codes))
        return out


class Augmentation:
    """A unital ring morphism A -> base field, given by its values on the basis."""

    def __init__(self, algebra: Algebra, values):
        F = algebra.base
        if isinstance(values, Augmentation):
            values = values.values
        vals = np.array([F.elem(v).code if not isinstance(v, (int, np.integer)) else int(v) % F.q
                         for v in values], dtype=np.int64)
        if vals.shape != (algebra.dim,):
            raise InvalidAugmentation(f"need {algebra.dim} values, got {vals.shape}")
        self.algebra = algebra
        self.values = vals
        self.values.setflags(write=False)
        if F.vdot(vals, algebra.unit_codes) != 1:
            raise InvalidAugmentation("augmentation must send the unit to 1")
        images = F.vdot(algebra.table, vals)  # phi(e_i e_j)
        if not np.array_equal(images, F.vmul(vals[:, None], vals[None, :])):
            raise InvalidAugmentation("augmentation is not multiplicative on basis pairs")

    def __call__(self, x: AlgebraElement) -> FieldElement:
        F = self.algebra.base
        return F.from_code(int(F.vdot(x.codes, self.values)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Augmentation)
            and other.algebra is self.algebra
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.values.tobytes()))

    def kernel(self) -> SubspaceBasis:
        ns = linalg.nullspace(self.values[None, :], self.algebra.base)
        return SubspaceBasis.from_codes(self.algebra, ns)

    def to_json(self) -> list:
        F = self.algebra.base
        if F.k == 1:
            return [int(v) for v in self.values]
        return [list(F.coords_of(int(v))) for v in self.values]

    def __repr__(self) -> str:
        return f"Augmentation({self.to_json()})"


class AlgebraMap:
    """A base-linear map between algebras, as a (dim target) x (dim source) code matrix."""

    def __init__(self, source: Algebra, target: Algebra, matrix):
        self.source = source
        self.target = target
        self.matrix = np.asarray(matrix, np.int64)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        F = self.source.base
        return self.target.from_codes(F.vdot(self.matrix, x.codes[None, :]))

    def kernel(self) -> SubspaceBasis:
        return SubspaceBasis.from_codes(self.source, linalg.nullspace(self.matrix, self.source.base))


@dataclass
class CayleyTable:
    """Finite group multiplication table, relabelled so the identity is element 0."""

    table: np.ndarray
    names: list = dc_field(default_factory=list)

    def __post_init__(self):
        T = np.asarray(self.table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] < 1:
            raise BadCayleyTable("shape", "table must be square and non-empty")
        m = T.shape[0]
        if np.any((T < 0) | (T >= m)):
            raise BadCayleyTable("closure", "entries out of range")
        full = np.arange(m)
        for r in range(m):
            if not np.array_equal(np.sort(T[r]), full):
                raise BadCayleyTable("latin square", f"row {r} is not a permutation")
            if not np.array_equal(np.sort(T[:, r]), full):
                raise BadCayleyTable("latin square", f"column {r} is not a permutation")
        if not np.array_equal(_assoc_left(T), _assoc_right(T)):
            raise BadCayleyTable("associativity")
        ident = [e for e in range(m) if np.array_equal(T[e], full) and np.array_equal(T[:, e], full)]
        if not ident:
            raise BadCayleyTable("identity", "no two-sided identity")
        e = ident[0]
        if e != 0:
            perm = np.arange(m)
            perm[[0, e]] = perm[[e, 0]]
            # relabel: new index i stands for old perm[i]
            inv = np.argsort(perm)
            T = inv[T[np.ix_(perm, perm)]]
            if self.names:
                self.names = [self.names[i] for i in perm]
        self.table = T
        if not self.names:
            self.names = list(range(m))

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    @property
    def abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


def _assoc_left(T):
    # (a b) c for all a, b, c
    return T[T[:, :, None], np.arange(T.shape[0])[None, None, :]]


def _assoc_right(T):
    # a (b c)
    m = T.shape[0]
    return T[np.arange(m)[:, None, None], T[None, :, :]]


def cyclic_group(n: int) -> CayleyTable:
    idx = np.arange(n)
    return CayleyTable((idx[:, None] + idx[None, :]) % n, names=[f"g^{i}" for i in idx])


def group_direct_product(G: CayleyTable, H: CayleyTable) -> CayleyTable:
    m, k = G.order, H.order
    T = np.empty((m * k, m * k), np.int64)
    for a, b, c, d in itertools.product(range(m), range(k), range(m), range(k)):
        T[a * k + b, c * k + d] = G.table[a, c] * k + H.table[b, d]
    return CayleyTable(T, names=[(g, h) for g in G.names for h in H.names])


def symmetric_group(n: int) -> CayleyTable:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    T = np.array([[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms])
    return CayleyTable(T, names=perms)


# --- constructors -------------------------------------------------------------

def alg_from_structure_constants(
    base: FiniteField, table, unit, label: str = "", augmentations: Iterable = ()
) -> Algebra:
    """Generic constructor; validates associativity and the unit law."""
    return Algebra(base, table, unit, label, augmentations)


def alg_field(F: FiniteField) -> Algebra:
    """The base field as a one-dimensional algebra over itself."""
    return Algebra(F, [[[1]]], [1], label=repr(F), augmentations=[[1]])


def alg_poly_quotient(F: FiniteField, f: Polynomial, label: str | None = None) -> Algebra:
    """F[x]/(f) with basis 1, x, ..., x^(d-1); evaluation at each root attached."""
    if f.field != F:
        raise BaseMismatch(f"{f.field!r} vs {F!r}")
    if not f.is_monic():
        raise NotMonic(repr(f))
    d = f.degree
    if d < 1:
        raise NotMonic("modulus must have degree >= 1")
    x = Polynomial.x(F)
    red = []
    for e in range(2 * d - 1):
        r = x.powmod(e, f) if e else Polynomial.constant(F, 1) % f
        codes = [c.code for c in r.coeffs] + [0] * (d - len(r.coeffs))
        red.append(codes)
    table = np.array([[red[i + j] for j in range(d)] for i in range(d)], np.int64)
    unit = np.zeros(d, np.int64)
    unit[0] = 1
    augs = []
    for c in F.elements():
        if not f(c):
            augs.append([(c**i).code for i in range(d)])
    return Algebra(F, table, unit, label or f"{F!r}[x]/({f!r})", augs)


def alg_group_algebra(G: CayleyTable, F: FiniteField, label: str | None = None) -> Algebra:
    """F[G] with basis indexed by group elements; the coefficient-sum augmentation is attached."""
    if not isinstance(G, CayleyTable):
        G = CayleyTable(G)
    m = G.order
    table = np.zeros((m, m, m), np.int64)
    g, h = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    table[g, h, G.table] = 1
    unit = np.zeros(m, np.int64)
    unit[0] = 1
    return Algebra(F, table, unit, label or f"{F!r}[G{m}]", [np.ones(m, np.int64)])


def alg_cyclic_group_algebra(n: int, F: FiniteField) -> Algebra:
    return alg_group_algebra(cyclic_group(n), F, label=f"{F!r}[C{n}]")


def alg_matrix(F: FiniteField, n: int) -> Algebra:
    """Full matrix algebra M_n(F), basis E_ij in row-major order."""
    d = n * n
    table = np.zeros((d, d, d), np.int64)
    for i, j, l in itertools.product(range(n), repeat=3):
        table[i * n + j, j * n + l, i * n + l] = 1
    unit = np.zeros(d, np.int64)
    for i in range(n):
        unit[i * n + i] = 1
    return Algebra(F, table, unit, f"M{n}({F!r})")


def _check_base(A: Algebra, B: Algebra) -> None:
    if A.base != B.base:
        raise BaseMismatch(f"{A.base!r} vs {B.base!r}")


def alg_tensor(A: Algebra, B: Algebra, label: str | None = None) -> Algebra:
    """A (x) B with basis e_i (x) f_j ordered i-major."""
    _check_base(A, B)
    F = A.base
    a, b = A.dim, B.dim
    T = F.vmul(
        A.table[:, None, :, None, :, None],
        B.table[None, :, None, :, None, :],
    ).reshape(a * b, a * b, a * b)
    unit = F.vmul(A.unit_codes[:, None], B.unit_codes[None, :]).reshape(-1)
    augs = [
        F.vmul(phi.values[:, None], psi.values[None, :]).reshape(-1)
        for phi in A.augmentations
        for psi in B.augmentations
    ]
    return Algebra(
        F, T, unit, label or f"({A.label} (x) {B.label})", augs, tensor_factors=(A, B)
    )


def alg_direct_product(A: Algebra, B: Algebra, label: str | None = None) -> Algebra:
    _check_base(A, B)
    a, b = A.dim, B.dim
    n = a + b
    T = np.zeros((n, n, n), np.int64)
    T[:a, :a, :a] = A.table
    T[a:, a:, a:] = B.table
    unit = np.concatenate([A.unit_codes, B.unit_codes])
    augs = [np.concatenate([phi.values, np.zeros(b, np.int64)]) for phi in A.augmentations]
    augs += [np.concatenate([np.zeros(a, np.int64), psi.values]) for psi in B.augmentations]
    return Algebra(A.base, T, unit, label or f"({A.label} x {B.label})", augs)


def alg_scalar_extend(A: Algebra, m: int, label: str | None = None) -> Algebra:
    """A (x)_{F_p} GF(p^m): same structure constants read in the larger field."""
    if not A.base.is_prime_field:
        raise NonPrimeBase(f"scalar extension needs a prime base field, got {A.base!r}")
    if m == 1:
        return A
    L = ff_make(A.p, m)
    # prime-field codes coincide with the codes of their images in L
    return Algebra(
        L,
        A.table,
        A.unit_codes,
        label or f"{A.label} (x) {L!r}",
        [phi.values for phi in A.augmentations],
    )


def alg_subalgebra(A: Algebra, vectors, unit: AlgebraElement, label: str = "") -> Algebra:
    """Algebra on the span of ``vectors`` (closed under product), with the given unit.

    The result remembers its embedding into ``A`` through ``parent``.
    """
    F = A.base
    M = linalg.row_basis([v.codes for v in vectors], F, A.dim)
    piv = linalg.pivots_of(M)
    r = M.shape[0]
    if r == 0:
        raise InvalidStructureConstants("the zero subspace is not a unital algebra")
    flat = A.to_flat(M)
    prods = A.from_flat(A.mul_flat(flat[:, None, :], flat[None, :, :]))  # r, r, n
    table = linalg.coordinates(M, piv, prods, F)
    if table is None:
        raise InvalidStructureConstants("subspace is not closed under multiplication")
    u = linalg.coordinates(M, piv, unit.codes, F)
    if u is None:
        raise InvalidStructureConstants("unit lies outside the subspace")
    sub = Algebra(F, table, u, label, parent=(A, M))
    return sub


# --- element operations -----------------------------------------------------

def _check_same(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.algebra is not b.algebra:
        raise AlgebraMismatch(f"{a.algebra!r} vs {b.algebra!r}")


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same(a, b)
    return a * b


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same(a, b)
    return a + b


def pow(a: AlgebraElement, n: int) -> AlgebraElement:  # noqa: A001 - mirrors the operation name
    return a**n


def left_mult_matrix(a: AlgebraElement) -> np.ndarray:
    """Code matrix whose column j holds the coordinates of a * e_j."""
    A = a.algebra
    F = A.base
    return F.vsum(F.vmul(a.codes[:, None, None], A.table), axis=0).T


def right_mult_matrix(a: AlgebraElement) -> np.ndarray:
    """Column j holds the coordinates of e_j * a."""
    A = a.algebra
    F = A.base
    return F.vsum(F.vmul(a.codes[None, :, None], A.table), axis=1).T


def is_invertible(a: AlgebraElement) -> bool:
    return linalg.rank(left_mult_matrix(a), a.algebra.base) == a.algebra.dim


def _nilpotency_squarings(n: int) -> int:
    return max(0, math.ceil(math.log2(n))) if n > 1 else 0


def is_nilpotent(a: AlgebraElement) -> bool:
    """a^(2^ceil(log2 dim)) == 0; that exponent is at least dim."""
    x = a
    for _ in range(_nilpotency_squarings(a.algebra.dim)):
        x = x * x
    return x.is_zero()


def is_idempotent(a: AlgebraElement) -> bool:
    return a * a == a


def idempotent_power(a: AlgebraElement) -> tuple[AlgebraElement, PowerCycle]:
    """Walk a, a^2, ... to the first repeat a^p = a^(p+k) and return a^(s*k)."""
    seen: dict[bytes, int] = {}
    powers = [a]
    seen[a.flat.tobytes()] = 1
    cur = a
    e = 1
    while True:
        cur = cur * a
        e += 1
        key = cur.flat.tobytes()
        if key in seen:
            p = seen[key]
            k = e - p
            break
        seen[key] = e
        powers.append(cur)
    s = -(-max(p, 1) // k)
    idem = powers[s * k - 1]
    if not is_idempotent(idem):
        raise AssertionError(f"a^{s * k} is not idempotent; cycle bookkeeping is broken")
    return idem, PowerCycle(p, k, s)


def batch_pow_flat(A: Algebra, X, exps) -> np.ndarray:
    """Row-wise X[i] ** exps[i] by square-and-multiply."""
    X = np.asarray(X, np.int64)
    exps = np.asarray(exps, np.int64).copy()
    result = np.broadcast_to(A.to_flat(A.unit_codes), X.shape).copy()
    base = X.copy()
    while exps.any():
        odd = (exps & 1).astype(bool)
        if odd.any():
            result[odd] = A.mul_flat(result[odd], base[odd])
        exps >>= 1
        live = exps > 0
        if live.any():
            base[live] = A.mul_flat(base[live], base[live])
    return result


def multiplication_table(A: Algebra, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """table[i, j] = enumeration index of x_i * x_j over all elements.

    Row i is row (i - p^b) plus e_b * (everything), b the lowest nonzero
    digit of i, built a digit block at a time.
    """
    X = A.all_elements_flat(budget)
    card, N, p = X.shape[0], A.flat_dim, A.p
    place = p ** np.arange(N, dtype=np.int64)
    # basis_rows[b, j] = digits of e_b * x_j
    basis_rows = np.einsum("ja,bac->bjc", X, A._S) % p
    # rows v*p^b + j (j < p^b) are rows j plus v * (e_b * everything)
    if p == 2:
        basis_idx = (basis_rows @ place).astype(np.int32)
        T = np.zeros((card, card), dtype=np.int32)
        for b in range(N):
            lo = 1 << b
            T[lo:2 * lo] = T[:lo] ^ basis_idx[b]
        return T
    digits = np.zeros((card, card, N), dtype=np.int8)
    for b in range(N):
        lo = int(place[b])
        for v in range(1, p):
            digits[v * lo:(v + 1) * lo] = (digits[:lo] + v * basis_rows[b]) % p
    T = (digits.astype(np.int64) @ place).astype(np.int32)
    return T


def idempotent_powers(A: Algebra, X, budget: int = DEFAULT_BUDGET):
    """Vectorized :func:`idempotent_power` over a batch of flat elements.

    Walks every row's power sequence in lockstep on element indices using
    :func:`multiplication_table`.  Returns (idempotents_flat, preperiod,
    period, s).
    """
    X = np.asarray(X, np.int64)
    T = multiplication_table(A, budget)
    card = T.shape[0]
    base = A.enumeration_index(X)
    m = base.shape[0]
    pre = np.zeros(m, np.int64)
    per = np.zeros(m, np.int64)
    seen = np.zeros((m, card), dtype=np.int32)
    rows = np.arange(m)
    a = base.copy()
    cur = base.copy()
    seen[rows, cur] = 1
    step = 1
    while rows.size:
        step += 1
        cur = T[a, cur]
        prev = seen[rows, cur]
        hit = prev > 0
        if hit.any():
            pre[rows[hit]] = prev[hit]
            per[rows[hit]] = step - prev[hit]
            keep = ~hit
            rows, a, cur = rows[keep], a[keep], cur[keep]
        seen[rows, cur] = step
    s = -(-np.maximum(pre, 1) // per)
    # a^(s*k) by square-and-multiply on indices
    exps = s * per
    result = np.full(m, int(A.enumeration_index(A.to_flat(A.unit_codes))), np.int64)
    sq = base.copy()
    while exps.any():
        odd = (exps & 1).astype(bool)
        result[odd] = T[result[odd], sq[odd]]
        exps >>= 1
        sq = T[sq, sq]
    E = (result[:, None] // A.p ** np.arange(A.flat_dim, dtype=np.int64)) % A.p
    return E, pre, per, s


def batch_is_nilpotent(A: Algebra, X) -> np.ndarray:
    Y = np.asarray(X, np.int64)
    for _ in range(_nilpotency_squarings(A.dim)):
        Y = A.mul_flat(Y, Y)
    return ~Y.any(axis=-1)


def batch_is_invertible(A: Algebra, X) -> np.ndarray:
    L = A.left_mult_flat(X)
    return linalg.batched_rank_mod_p(L, A.p) == A.flat_dim


def batch_is_idempotent(A: Algebra, X) -> np.ndarray:
    X = np.asarray(X, np.int64)
    return np.all(A.mul_flat(X, X) == X, axis=-1)


def nilpotent_set_bruteforce(A: Algebra, budget: int = DEFAULT_BUDGET) -> list[AlgebraElement]:
    """All nilpotent elements by exhaustive enumeration (independent oracle)."""
    X = A.all_elements_flat(budget)
    # independent of is_nilpotent: iterate plain powers up to dim
    Y = X.copy()
    for _ in range(A.dim - 1):
        Y = A.mul_flat(Y, X)
    mask = ~Y.any(axis=-1)
    return [AlgebraElement(A, row) for row in X[mask]]


def nilradical_via_augmentation(A: Algebra, phi: Augmentation) -> SubspaceBasis:
    """ker(phi); every basis vector is checked to be nilpotent.

    On a connected algebra the kernel of an augmentation is exactly the set of
    nilpotents.  A non-nilpotent kernel vector proves the algebra is not
    connected and raises :class:`NotConnectedEvidence`.
    """
    if phi.algebra is not A:
        raise AlgebraMismatch("augmentation belongs to another algebra")
    K = phi.kernel()
    for v in K.vectors:
        if not is_nilpotent(v):
            raise NotConnectedEvidence(f"kernel vector {v!r} is not nilpotent")
    return K


def induced_augmentation(T: Algebra, phi: Augmentation) -> AlgebraMap:
    """psi: A (x) E -> E, a (x) e -> phi(a) e, for T built by alg_tensor(A, E)."""
    if T.tensor_factors is None:
        raise NotATensor(f"{T!r} was not built by alg_tensor")
    A, E = T.tensor_factors
    if phi.algebra is not A:
        raise NotATensor("augmentation does not live on the left tensor factor")
    F = T.base
    # column (i, j) is phi(e_i) * f_j
    M = np.zeros((E.dim, A.dim, E.dim), np.int64)
    for j in range(E.dim):
        M[j, :, j] = phi.values
    M = M.reshape(E.dim, A.dim * E.dim)
    psi = AlgebraMap(T, E, M)
    if psi(T.one) != E.one:
        raise InvalidAugmentation("induced map does not preserve the unit")
    for i in range(T.dim):
        bi = T.basis(i)
        for j in range(T.dim):
            bj = T.basis(j)
            if psi(bi * bj) != psi(bi) * psi(bj):
                raise InvalidAugmentation("induced map is not multiplicative")
    return psi


def find_augmentations(A: Algebra, budget: int = DEFAULT_BUDGET) -> list[Augmentation]:
    """Exhaustive search over all q^n linear functionals."""
    F = A.base
    size = F.q**A.dim
    if size > budget:
        raise BudgetExceeded(size, budget)
    idx = np.arange(size, dtype=np.int64)
    V = (idx[:, None] // F.q ** np.arange(A.dim, dtype=np.int64)) % F.q
    ok = F.vdot(V, A.unit_codes[None, :]) == 1
    V = V[ok]
    # phi(e_i e_j) = sum_l T_ijl phi_l  versus phi_i phi_j
    img = F.vsum(F.vmul(A.table[None], V[:, None, None, :]), axis=-1)
    prod = F.vmul(V[:, :, None], V[:, None, :])
    good = np.all(img == prod, axis=(1, 2))
    return [Augmentation(A, v) for v in V[good]]


def ideal_power_chain(A: Algebra, N: SubspaceBasis, max_steps: int = 64) -> int:
    """Least j >= 1 with N^j = 0, for a nilpotent ideal spanned by N."""
    F = A.base
    current = N.matrix()
    base = A.to_flat(N.matrix())
    j = 1
    while current.shape[0]:
        if j >= max_steps:
            raise AssertionError("ideal powers did not vanish; the span is not nilpotent")
        cur_flat = A.to_flat(current)
        prods = A.from_flat(A.mul_flat(base[:, None, :], cur_flat[None, :, :])).reshape(-1, A.dim)
        current = linalg.row_basis(prods, F, A.dim)
        current = current[np.any(current != 0, axis=1)]
        j += 1
    return j
