"""The committed corpus of small algebras used by the property suites.

* every F_2[x]/(f) with f monic of degree 1..4, and every F_3[x]/(f) of degree 1..2;
* group algebras of C_1..C_6 over F_2 and F_3;
* pairwise tensor products (unordered, repetition allowed) of all the above
  of dimension >= 2 over a common base, kept when q^n <= budget;
* a few noncommutative extras: M_2(F_2), F_2[S_3], F_3[S_3].
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    DEFAULT_BUDGET,
    Algebra,
    alg_cyclic_group_algebra,
    alg_group_algebra,
    alg_matrix,
    alg_poly_quotient,
    alg_tensor,
    symmetric_group,
)
from .gfield import ff_make
from .polyfactor import Polynomial


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: Algebra
    family: str  # quotient | group | tensor | extra
    modulus: Polynomial | None = None


def _monic(F, d):
    for lower in itertools.product(range(F.p), repeat=d):
        yield Polynomial(F, list(lower) + [1])


def quotient_entries() -> list[CorpusEntry]:
    out = []
    for p, max_deg in ((2, 4), (3, 2)):
        F = ff_make(p, 1)
        for d in range(1, max_deg + 1):
            for f in _monic(F, d):
                A = alg_poly_quotient(F, f)
                out.append(CorpusEntry(A.label, A, "quotient", f))
    return out


def group_entries() -> list[CorpusEntry]:
    out = []
    for p in (2, 3):
        F = ff_make(p, 1)
        for n in range(1, 7):
            A = alg_cyclic_group_algebra(n, F)
            out.append(CorpusEntry(A.label, A, "group"))
    return out


def tensor_entries(budget: int = DEFAULT_BUDGET) -> list[CorpusEntry]:
    """Unordered pairs (with repetition) of the quotient and group entries of dim >= 2."""
    factors = [e.algebra for e in quotient_entries() + group_entries() if e.algebra.dim >= 2]
    out = []
    for A, B in itertools.combinations_with_replacement(factors, 2):
        if A.base == B.base and A.base.q ** (A.dim * B.dim) <= budget:
            T = alg_tensor(A, B)
            out.append(CorpusEntry(T.label, T, "tensor"))
    return out


def extra_entries() -> list[CorpusEntry]:
    F2, F3 = ff_make(2, 1), ff_make(3, 1)
    S3 = symmetric_group(3)
    algs = [
        alg_matrix(F2, 2),
        alg_group_algebra(S3, F2, label="GF(2)[S3]"),
        alg_group_algebra(S3, F3, label="GF(3)[S3]"),
    ]
    return [CorpusEntry(A.label, A, "extra") for A in algs]


@lru_cache(maxsize=None)
def corpus(budget: int = DEFAULT_BUDGET) -> tuple[CorpusEntry, ...]:
    entries = quotient_entries() + group_entries() + tensor_entries(budget) + extra_entries()
    return tuple(e for e in entries if e.algebra.cardinality <= budget)
