"""Connectedness certificates and complete block decompositions.

For a commutative algebra over GF(q) the q-power map is linear and its fixed
points form a subalgebra whose dimension is the number of blocks.  Any
non-scalar fixed element has a minimal polynomial dividing t^q - t, so it
splits into distinct linear factors and Lagrange interpolation produces
orthogonal idempotents.  Recursing on corners gives a primitive system.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import (
    DEFAULT_BUDGET,
    Algebra,
    AlgebraElement,
    Augmentation,
    SubspaceBasis,
    alg_subalgebra,
    batch_is_idempotent,
    batch_is_invertible,
    batch_pow_flat,
    idempotent_power,
    is_idempotent,
)
from .errors import NotCommutative, NotFixed, NotIdempotent, ScalarElement
from .polyfactor import Polynomial, factor, is_irreducible


class Status(str, enum.Enum):
    CONNECTED = "Connected"
    DECOMPOSABLE = "Decomposable"
    UNKNOWN = "Unknown"


class Certification(str, enum.Enum):
    EXHAUSTIVE_SCAN = "ExhaustiveScan"
    COMMUTATIVE_FROBENIUS = "CommutativeFrobenius"
    CENTRAL_ONLY = "CentralOnly"


@dataclass(frozen=True)
class ConnectivityVerdict:
    status: Status
    witness: AlgebraElement | None
    certification: Certification

    def __post_init__(self):
        if self.status is Status.DECOMPOSABLE:
            w = self.witness
            if w is None or not is_idempotent(w) or w.is_zero() or w == w.algebra.one:
                raise AssertionError("a Decomposable verdict needs a nontrivial idempotent witness")

    @property
    def connected(self) -> bool:
        return self.status is Status.CONNECTED


@dataclass(frozen=True)
class IdempotentSystem:
    idems: tuple[AlgebraElement, ...]
    complete: bool
    primitive: bool

    def __len__(self) -> int:
        return len(self.idems)

    def __iter__(self):
        return iter(self.idems)

    def verify(self) -> None:
        """Raise AssertionError if the declared invariants fail."""
        if not self.idems:
            raise AssertionError("empty idempotent system")
        A = self.idems[0].algebra
        total = A.zero
        for i, e in enumerate(self.idems):
            if not is_idempotent(e):
                raise AssertionError(f"{e!r} is not idempotent")
            for j, f in enumerate(self.idems):
                if i != j and not (e * f).is_zero():
                    raise AssertionError(f"{e!r} and {f!r} are not orthogonal")
            total = total + e
        if self.complete and total != A.one:
            raise AssertionError("idempotents do not sum to the unit")
        if self.primitive:
            for e in self.idems:
                if not is_connected(corner(A, e)).connected:
                    raise AssertionError(f"corner at {e!r} is not connected")


@dataclass(frozen=True)
class Block:
    idempotent: AlgebraElement
    corner: Algebra
    dim: int
    is_field: bool | None


@dataclass(frozen=True)
class BlockReport:
    blocks: tuple[Block, ...]
    certification: Certification

    def dims(self) -> list[int]:
        return [b.dim for b in self.blocks]

    def signature(self) -> Counter:
        return Counter((b.dim, b.is_field) for b in self.blocks)


def _require_commutative(A: Algebra) -> None:
    if not A.commutative:
        raise NotCommutative(f"{A!r} is not commutative")


def _is_scalar(x: AlgebraElement) -> bool:
    A = x.algebra
    U = linalg.row_basis(A.unit_codes[None, :], A.base, A.dim)
    return linalg.coordinates(U, linalg.pivots_of(U), x.codes, A.base) is not None


def frobenius_fixed_subalgebra(A: Algebra) -> SubspaceBasis:
    """Basis of {a : a^q = a}; its dimension is the number of blocks."""
    _require_commutative(A)
    F = A.base
    eye = np.eye(A.dim, dtype=np.int64)
    images = A.from_flat(batch_pow_flat(A, A.to_flat(eye), np.full(A.dim, F.q)))
    # column i of (Phi - id) is e_i^q - e_i
    M = F.vsub(images, eye).T
    return SubspaceBasis.from_codes(A, linalg.nullspace(M, F))


def minimal_polynomial(b: AlgebraElement) -> Polynomial:
    A = b.algebra
    F = A.base
    powers = [A.one.codes]
    cur = A.one
    while True:
        cur = cur * b
        powers.append(cur.codes)
        ns = linalg.nullspace(np.array(powers, np.int64).T, F)
        if ns.shape[0]:
            c = ns[0]
            return Polynomial(F, [F.from_code(int(v)) for v in c]).monic()


def split_by_element(A: Algebra, b: AlgebraElement) -> IdempotentSystem:
    """Lagrange idempotents of a non-scalar q-power-fixed element, ordered by eigenvalue code."""
    _require_commutative(A)
    F = A.base
    if b.algebra is not A:
        raise ValueError("element belongs to another algebra")
    if b ** F.q != b:
        raise NotFixed(f"{b!r} is not fixed by the q-power map")
    if _is_scalar(b):
        raise ScalarElement(f"{b!r} is a scalar multiple of the unit")
    m = minimal_polynomial(b)
    fl = factor(m)
    roots = []
    for g, e in fl.factors:
        if g.degree != 1 or e != 1:
            raise AssertionError(f"minimal polynomial {m!r} of a fixed element must split simply")
        roots.append(-g.coeffs[0])
    roots.sort(key=lambda r: r.code)
    idems = []
    for lam in roots:
        e = A.one
        for mu in roots:
            if mu != lam:
                e = e * ((b - mu) * (lam - mu).inverse())
        idems.append(e)
    return IdempotentSystem(tuple(idems), complete=True, primitive=False)


def corner(A: Algebra, e: AlgebraElement) -> Algebra:
    """The Peirce corner eAe as an algebra with unit e.

    The corner keeps its embedding (``corner.parent``) and inherits every
    augmentation of A that sends e to 1.
    """
    if e.algebra is not A:
        raise ValueError("idempotent belongs to another algebra")
    if not is_idempotent(e):
        raise NotIdempotent(f"{e!r} is not idempotent")
    eye = A.to_flat(np.eye(A.dim, dtype=np.int64))
    images = A.from_flat(A.mul_flat(A.mul_flat(e.flat, eye), e.flat))
    vectors = [A.from_codes(r) for r in images]
    C = alg_subalgebra(A, vectors, e, label=f"{A.label}|corner")
    M = C.parent[1]
    F = A.base
    for phi in A.augmentations:
        if phi(e) == F.one:
            C.augmentations.append(Augmentation(C, F.vdot(M, phi.values[None, :])))
    return C


def lift(C: Algebra, x: AlgebraElement) -> AlgebraElement:
    """Image of a corner/subalgebra element in the ambient algebra."""
    A, M = C.parent
    F = A.base
    return A.from_codes(F.vsum(F.vmul(x.codes[:, None], M), axis=0))


def restrict(C: Algebra, y: AlgebraElement) -> AlgebraElement | None:
    """Coordinates of an ambient element inside C, or None if it lies outside."""
    A, M = C.parent
    c = linalg.coordinates(M, linalg.pivots_of(M), y.codes, A.base)
    return None if c is None else C.from_codes(c)


def center(A: Algebra) -> SubspaceBasis:
    """Basis of Z(A), from the linear system a e_i = e_i a."""
    F = A.base
    n = A.dim
    # row (i, l), column j: coefficient of e_l in e_j e_i - e_i e_j
    M = F.vsub(A.table.transpose(1, 0, 2), A.table)  # [i, j, l] = (e_j e_i - e_i e_j)_l
    M = M.transpose(0, 2, 1).reshape(n * n, n)
    return SubspaceBasis.from_codes(A, linalg.nullspace(M, F))


def center_algebra(A: Algebra) -> Algebra:
    Z = center(A)
    return alg_subalgebra(A, list(Z.vectors), A.one, label=f"Z({A.label})")


def _pick_splitter(C: Algebra, B: SubspaceBasis, rng) -> AlgebraElement:
    if rng is None:
        for v in B.vectors:
            if not _is_scalar(v):
                return v
        raise AssertionError("fixed subalgebra of dim > 1 has no non-scalar basis vector")
    F = C.base
    M = B.matrix()
    while True:
        c = rng.integers(0, F.q, size=B.dim)
        v = C.from_codes(F.vsum(F.vmul(c[:, None], M), axis=0))
        if not _is_scalar(v):
            return v


def primitive_idempotents(A: Algebra, rng: np.random.Generator | None = None) -> IdempotentSystem:
    """Complete primitive system by recursive splitting of corners.

    Without ``rng`` the splitting element is the first non-scalar vector of
    the fixed-subalgebra basis, so the output is deterministic.
    """
    _require_commutative(A)
    pending = [A.one]
    done: list[AlgebraElement] = []
    while pending:
        e = pending.pop(0)
        C = corner(A, e)
        B = frobenius_fixed_subalgebra(C)
        if B.dim == 1:
            done.append(e)
            continue
        b = _pick_splitter(C, B, rng)
        pieces = [lift(C, f) for f in split_by_element(C, b)]
        pending = pieces + pending
    return IdempotentSystem(tuple(done), complete=True, primitive=True)


def is_connected(
    A: Algebra,
    budget: int = DEFAULT_BUDGET,
    rng: np.random.Generator | None = None,
    probes: int = 64,
) -> ConnectivityVerdict:
    """Exhaustive scan within budget, else Frobenius (commutative), else central search."""
    if A.cardinality <= budget:
        X = A.all_elements_flat(budget)
        mask = batch_is_idempotent(A, X)
        mask &= X.any(axis=1)
        mask &= ~np.all(X == A.one.flat, axis=1)
        hits = np.nonzero(mask)[0]
        if hits.size:
            w = AlgebraElement(A, X[hits[0]])
            return ConnectivityVerdict(Status.DECOMPOSABLE, w, Certification.EXHAUSTIVE_SCAN)
        return ConnectivityVerdict(Status.CONNECTED, None, Certification.EXHAUSTIVE_SCAN)
    if A.commutative:
        B = frobenius_fixed_subalgebra(A)
        if B.dim == 1:
            return ConnectivityVerdict(Status.CONNECTED, None, Certification.COMMUTATIVE_FROBENIUS)
        w = split_by_element(A, _pick_splitter(A, B, None)).idems[0]
        return ConnectivityVerdict(Status.DECOMPOSABLE, w, Certification.COMMUTATIVE_FROBENIUS)
    Z = center_algebra(A)
    if Z.dim > 1:
        BZ = frobenius_fixed_subalgebra(Z)
        if BZ.dim > 1:
            w = lift(Z, split_by_element(Z, _pick_splitter(Z, BZ, None)).idems[0])
            return ConnectivityVerdict(Status.DECOMPOSABLE, w, Certification.CENTRAL_ONLY)
    if rng is None:
        rng = np.random.default_rng(0)
    for _ in range(probes):
        e, _cycle = idempotent_power(A.random_element(rng))
        if not e.is_zero() and e != A.one:
            return ConnectivityVerdict(Status.DECOMPOSABLE, e, Certification.CENTRAL_ONLY)
    return ConnectivityVerdict(Status.UNKNOWN, None, Certification.CENTRAL_ONLY)


def is_field(C: Algebra, budget: int = DEFAULT_BUDGET) -> bool | None:
    """Whether every nonzero element is invertible; None when undecidable here."""
    if C.cardinality <= budget:
        X = C.all_elements_flat(budget)[1:]
        return bool(batch_is_invertible(C, X).all())
    if C.commutative:
        candidates = [C.basis(i) for i in range(C.dim)]
        rng = np.random.default_rng(0)
        candidates += [C.random_element(rng) for _ in range(16)]
        for g in candidates:
            m = minimal_polynomial(g)
            if m.degree == C.dim:
                return is_irreducible(m)
    return None


def block_decompose(
    A: Algebra, budget: int = DEFAULT_BUDGET, rng: np.random.Generator | None = None
) -> BlockReport:
    if A.commutative:
        system = primitive_idempotents(A, rng)
        idems = list(system)
        cert = Certification.COMMUTATIVE_FROBENIUS
    else:
        Z = center_algebra(A)
        idems = [lift(Z, e) for e in primitive_idempotents(Z, rng)]
        cert = Certification.CENTRAL_ONLY
    blocks = []
    for e in idems:
        C = corner(A, e)
        blocks.append(Block(e, C, C.dim, is_field(C, budget)))
    return BlockReport(tuple(blocks), cert)


def decomposition_signature(A: Algebra, rng=None, budget: int = DEFAULT_BUDGET) -> Counter:
    """Multiset of (corner dim, is_field) over a primitive decomposition."""
    out = Counter()
    for e in primitive_idempotents(A, rng):
        C = corner(A, e)
        out[(C.dim, is_field(C, budget))] += 1
    return out


def krull_schmidt_check(A: Algebra, trials: int = 20, seed: int = 0) -> bool:
    """True iff randomized decompositions all give the same block multiset."""
    _require_commutative(A)
    rng = np.random.default_rng(seed)
    reference = decomposition_signature(A)
    return all(decomposition_signature(A, rng) == reference for _ in range(trials))
