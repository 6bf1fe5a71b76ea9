"""Corpus-wide property checks; one function per acceptance criterion.

Each check returns a :class:`CriterionResult` instead of raising, so the
``selftest`` subcommand and the test-suite can both print a line per
criterion.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_BUDGET,
    AlgebraElement,
    SubspaceBasis,
    alg_tensor,
    batch_is_idempotent,
    batch_is_invertible,
    batch_is_nilpotent,
    find_augmentations,
    ideal_power_chain,
    idempotent_powers,
    multiplication_table,
    nilpotent_set_bruteforce,
)
from .corpus import CorpusEntry, corpus
from .decomp import (
    Certification,
    Status,
    decomposition_signature,
    frobenius_fixed_subalgebra,
    is_connected,
    primitive_idempotents,
)
from .errors import DemoAssertionFailed
from .gfield import ff_make
from .motivemodel import counterexample_demo
from .polyfactor import Polynomial, factor, is_irreducible


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.title} -- {self.detail} ({self.seconds:.2f}s)"


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def _entries(budget):
    return corpus(budget)


def certified_connected(entry: CorpusEntry, budget: int = DEFAULT_BUDGET) -> bool:
    v = is_connected(entry.algebra, budget)
    return v.status is Status.CONNECTED and v.certification is Certification.EXHAUSTIVE_SCAN


# 1 ---------------------------------------------------------------------------

def check_counterexample(budget: int = DEFAULT_BUDGET, time_limit: float = 1.0) -> CriterionResult:
    with _Timer() as t:
        try:
            ledger = counterexample_demo(budget)
            ok = len(ledger.steps) == 5 and all(s[2] for s in ledger.steps)
            detail = f"{sum(s[2] for s in ledger.steps)}/5 assertions"
        except DemoAssertionFailed as exc:
            ok, detail = False, str(exc)
    ok = ok and t.seconds < time_limit
    return CriterionResult(1, "counterexample reproduction", ok, detail + f", limit {time_limit}s", t.seconds)


# 2 ---------------------------------------------------------------------------

def check_idempotent_powers(budget: int = DEFAULT_BUDGET, time_limit: float = 30.0) -> CriterionResult:
    failures = 0
    elements = 0
    with _Timer() as t:
        for e in _entries(budget):
            A = e.algebra
            X = A.all_elements_flat(budget)
            E, pre, per, s = idempotent_powers(A, X)
            bad = ~batch_is_idempotent(A, E)
            bad |= (s * per < pre) | (s * per < 1)
            failures += int(bad.sum())
            elements += X.shape[0]
    ok = failures == 0 and t.seconds < time_limit
    return CriterionResult(
        2, "idempotent powers", ok,
        f"{elements} elements in {len(_entries(budget))} algebras, {failures} failures, limit {time_limit}s",
        t.seconds,
    )


# 3 ---------------------------------------------------------------------------

def _index_set(A, X) -> set[int]:
    return set(A.enumeration_index(X).tolist())


def _pairwise_sums_closed(A, idx: np.ndarray, member: np.ndarray, chunk: int = 128) -> bool:
    place = A.p ** np.arange(A.flat_dim, dtype=np.int64)
    D = (idx[:, None] // place) % A.p
    for start in range(0, D.shape[0], chunk):
        S = (D[start:start + chunk, None, :] + D[None, :, :]) % A.p
        if not member[S @ place].all():
            return False
    return True


def prop11_failures(entry: CorpusEntry, budget: int = DEFAULT_BUDGET) -> list[str]:
    A = entry.algebra
    out = []
    X = A.all_elements_flat(budget)
    nil = batch_is_nilpotent(A, X)
    inv = batch_is_invertible(A, X)
    if np.any(nil == inv):
        out.append(f"{entry.name}: {int(np.sum(nil == inv))} elements break the dichotomy")
    Nset = np.array([v.flat for v in nilpotent_set_bruteforce(A, budget)], np.int64)
    nu = Nset.shape[0]
    nil_idx = A.enumeration_index(Nset)
    member = np.zeros(A.cardinality, bool)
    member[nil_idx] = True
    if not np.array_equal(member, nil):
        out.append(f"{entry.name}: brute-force nilpotent set disagrees with the nilpotency test")
    if not _pairwise_sums_closed(A, nil_idx, member):
        out.append(f"{entry.name}: nilpotent set not closed under addition")
    T = multiplication_table(A, budget)
    if not (member[T[:, nil_idx]].all() and member[T[nil_idx, :]].all()):
        out.append(f"{entry.name}: nilpotent set not absorbing")
    span = SubspaceBasis.from_codes(A, A.from_flat(Nset))
    steps = ideal_power_chain(A, span)
    if steps > min(nu, A.dim + 1):
        out.append(f"{entry.name}: ideal chain needs {steps} > min({nu}, {A.dim + 1}) steps")
    return out


def check_prop11(budget: int = DEFAULT_BUDGET) -> CriterionResult:
    failures: list[str] = []
    count = 0
    with _Timer() as t:
        for e in _entries(budget):
            if certified_connected(e, budget):
                count += 1
                failures += prop11_failures(e, budget)
    detail = f"{count} connected algebras, {len(failures)} failures"
    if failures:
        detail += "; " + failures[0]
    return CriterionResult(3, "nilpotent/invertible dichotomy and nil ideal", not failures, detail, t.seconds)


# 4 ---------------------------------------------------------------------------

def kernel_equals_nilpotents(entry: CorpusEntry, budget: int = DEFAULT_BUDGET) -> list[str]:
    A = entry.algebra
    out = []
    nil = _index_set(A, np.array([v.flat for v in nilpotent_set_bruteforce(A, budget)], np.int64))
    for phi in find_augmentations(A, budget):
        ker = phi.kernel().elements(budget)
        ker_idx = _index_set(A, np.array([v.flat for v in ker], np.int64))
        if ker_idx != nil:
            out.append(f"{entry.name}: ker{phi.to_json()} differs from the nilpotent set")
    return out


def tensor_connectivity_pairs(budget: int = DEFAULT_BUDGET):
    """(A connected with augmentation, E connected) pairs over F_2 and F_3 within budget."""
    pool = [e for e in _entries(budget) if e.family in ("quotient", "group") and certified_connected(e, budget)]
    pairs = []
    for a in pool:
        if not a.algebra.augmentations:
            continue
        for b in pool:
            A, E = a.algebra, b.algebra
            if A.base == E.base and A.base.q ** (A.dim * E.dim) <= budget:
                pairs.append((a, b))
    return pairs


def check_cor13(budget: int = DEFAULT_BUDGET) -> CriterionResult:
    failures: list[str] = []
    n_kernel = 0
    n_pairs = 0
    with _Timer() as t:
        for e in _entries(budget):
            if certified_connected(e, budget) and find_augmentations(e.algebra, budget):
                n_kernel += 1
                failures += kernel_equals_nilpotents(e, budget)
        for a, b in tensor_connectivity_pairs(budget):
            n_pairs += 1
            v = is_connected(alg_tensor(a.algebra, b.algebra), budget)
            if not (v.status is Status.CONNECTED and v.certification is Certification.EXHAUSTIVE_SCAN):
                failures.append(f"{a.name} (x) {b.name} is {v.status.value}")
    detail = f"{n_kernel} kernel checks, {n_pairs} tensor pairs, {len(failures)} failures"
    if failures:
        detail += "; " + failures[0]
    return CriterionResult(4, "nilradical = ker(augmentation); tensor connectedness", not failures, detail, t.seconds)


# 5 ---------------------------------------------------------------------------

def exhaustive_primitive_count(entry: CorpusEntry, budget: int = DEFAULT_BUDGET) -> int:
    """Minimal nonzero idempotents, found by scanning every element."""
    A = entry.algebra
    X = A.all_elements_flat(budget)
    I = X[batch_is_idempotent(A, X) & X.any(axis=1)]
    # f <= e  iff  e f = f; e is primitive iff nothing nonzero lies strictly below it
    prods = A.mul_flat(I[:, None, :], I[None, :, :])
    below = np.all(prods == I[None, :, :], axis=-1)  # below[e, f]: f <= e
    return int(np.sum(below.sum(axis=1) == 1))


def block_counts(entry: CorpusEntry, budget: int = DEFAULT_BUDGET) -> dict[str, int]:
    A = entry.algebra
    counts = {
        "exhaustive": exhaustive_primitive_count(entry, budget),
        "frobenius": frobenius_fixed_subalgebra(A).dim,
        "splitting": len(primitive_idempotents(A)),
    }
    if entry.modulus is not None:
        counts["factors"] = len(factor(entry.modulus).factors)
    return counts


def check_oracle_equivalence(budget: int = DEFAULT_BUDGET) -> CriterionResult:
    failures = []
    n = 0
    with _Timer() as t:
        for e in _entries(budget):
            if not e.algebra.commutative:
                continue
            n += 1
            c = block_counts(e, budget)
            if len(set(c.values())) != 1:
                failures.append(f"{e.name}: {c}")
    detail = f"{n} commutative algebras, {len(failures)} disagreements"
    if failures:
        detail += "; " + failures[0]
    return CriterionResult(5, "block-count oracle equivalence", not failures, detail, t.seconds)


# 6 ---------------------------------------------------------------------------

def random_monic_polys(count: int = 200, seed: int = 0, max_degree: int = 8):
    rng = np.random.default_rng(seed)
    fields = [ff_make(2, 1), ff_make(3, 1), ff_make(2, 2)]
    out = []
    for i in range(count):
        F = fields[i % len(fields)]
        d = int(rng.integers(1, max_degree + 1))
        lower = [F.from_code(int(c)) for c in rng.integers(0, F.q, size=d)]
        out.append(Polynomial(F, lower + [F.one]))
    return out


def check_factor_roundtrip(count: int = 200, seed: int = 0, time_limit: float = 5.0) -> CriterionResult:
    bad = 0
    with _Timer() as t:
        rng = np.random.default_rng(seed + 1)
        for f in random_monic_polys(count, seed):
            fl = factor(f, rng)
            if fl.expand() != f or not all(is_irreducible(g) for g, _ in fl.factors):
                bad += 1
    ok = bad == 0 and t.seconds < time_limit
    return CriterionResult(6, "factorization round-trip", ok,
                           f"{count} polynomials, {bad} failures, limit {time_limit}s", t.seconds)


# 7 ---------------------------------------------------------------------------

def check_krull_schmidt(budget: int = DEFAULT_BUDGET, trials: int = 20, seed: int = 0) -> CriterionResult:
    failures = []
    n = 0
    with _Timer() as t:
        rng = np.random.default_rng(seed)
        for e in _entries(budget):
            A = e.algebra
            if not A.commutative:
                continue
            n += 1
            ref = decomposition_signature(A, budget=budget)
            for _ in range(trials):
                sig = decomposition_signature(A, rng, budget)
                if sig != ref:
                    failures.append(f"{e.name}: {dict(sig)} vs {dict(ref)}")
                    break
    detail = f"{n} commutative algebras x {trials} randomized runs, {len(failures)} mismatches"
    if failures:
        detail += "; " + failures[0]
    return CriterionResult(7, "Krull-Schmidt uniqueness", not failures, detail, t.seconds)


ALL_CHECKS = (
    check_counterexample,
    check_idempotent_powers,
    check_prop11,
    check_cor13,
    check_oracle_equivalence,
    check_factor_roundtrip,
    check_krull_schmidt,
)


def run_all(budget: int = DEFAULT_BUDGET) -> list[CriterionResult]:
    results = []
    for fn in ALL_CHECKS:
        if fn in (check_factor_roundtrip,):
            results.append(fn())
        else:
            results.append(fn(budget))
    return results
