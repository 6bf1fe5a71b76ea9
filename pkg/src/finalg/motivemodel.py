"""Direct summands modelled by (endomorphism ring, projector) pairs.

A summand is represented only through its reduced endomorphism ring: the
Peirce corner pi R pi.  Indecomposability is connectedness of that corner,
changing coefficients is scalar extension of R, and the multiplicity map is
an augmentation of the corner.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .algebra import (
    DEFAULT_BUDGET,
    Algebra,
    AlgebraElement,
    Augmentation,
    alg_cyclic_group_algebra,
    alg_poly_quotient,
    alg_scalar_extend,
    alg_tensor,
    is_idempotent,
    nilradical_via_augmentation,
)
from .decomp import (
    ConnectivityVerdict,
    Status,
    block_decompose,
    corner,
    is_connected,
    is_field,
    restrict,
)
from .errors import (
    DemoAssertionFailed,
    NonPrimeBase,
    NotConnectedEvidence,
    PreconditionFailed,
    TheoremViolation,
)
from .gfield import FiniteField, ff_make
from .polyfactor import Polynomial


class SummandModel:
    def __init__(self, ring: Algebra, pi: AlgebraElement, label: str = ""):
        if pi.algebra is not ring:
            raise PreconditionFailed("projector does not live in the given ring")
        if not is_idempotent(pi):
            raise PreconditionFailed(f"projector {pi!r} is not idempotent")
        if pi.is_zero():
            raise PreconditionFailed("the zero projector defines the zero summand")
        self.ring = ring
        self.pi = pi
        self.label = label

    @cached_property
    def corner(self) -> Algebra:
        return corner(self.ring, self.pi)

    def __repr__(self) -> str:
        return f"SummandModel({self.label or self.ring.label}, pi={self.pi.to_json()})"


@dataclass(frozen=True)
class LedgerEntry:
    summand: SummandModel
    corner_dim: int
    is_field: bool | None
    verdict: ConnectivityVerdict


@dataclass
class DecompositionLedger:
    base: FiniteField
    entries: list[LedgerEntry] = field(default_factory=list)
    narrative: list[str] = field(default_factory=list)
    steps: list[tuple[int, str, bool]] = field(default_factory=list)

    def log(self, line: str) -> None:
        self.narrative.append(line)

    def corner_dims(self) -> list[int]:
        return sorted(e.corner_dim for e in self.entries)

    def verify(self) -> None:
        """Summand projectors must be a complete orthogonal system."""
        if not self.entries:
            return
        R = self.entries[0].summand.ring
        total = R.zero
        pis = [e.summand.pi for e in self.entries]
        for i, a in enumerate(pis):
            for j, b in enumerate(pis):
                if i != j and not (a * b).is_zero():
                    raise AssertionError("summand projectors are not orthogonal")
            total = total + a
        if total != R.one:
            raise AssertionError("summand projectors do not sum to the unit")


def is_indecomposable(S: SummandModel, budget: int = DEFAULT_BUDGET) -> ConnectivityVerdict:
    return is_connected(S.corner, budget)


def coeff_extend(S: SummandModel, m: int) -> SummandModel:
    """Change coefficients from F_p to GF(p^m) on the endomorphism ring."""
    if not S.ring.base.is_prime_field:
        raise NonPrimeBase(f"coefficient extension needs a prime base, got {S.ring.base!r}")
    if m == 1:
        return S
    R = alg_scalar_extend(S.ring, m)
    return SummandModel(R, R.from_codes(S.pi.codes), label=f"{S.label}_{R.base!r}")


@dataclass(frozen=True)
class PreservationReport:
    summand: SummandModel
    extended: SummandModel
    verdict: ConnectivityVerdict
    steps: tuple[tuple[str, str], ...]

    @property
    def preserved(self) -> bool:
        return self.verdict.connected


def _coerce_augmentation(C: Algebra, phi) -> Augmentation:
    if phi is None:
        raise PreconditionFailed("no augmentation supplied for the corner")
    values = phi.values if isinstance(phi, Augmentation) else phi
    try:
        return Augmentation(C, values)
    except Exception as exc:  # any validation failure means the hypothesis is unmet
        raise PreconditionFailed(f"invalid augmentation on the corner: {exc}") from exc


def upper_preservation_check(
    S: SummandModel, phi, m: int, budget: int = DEFAULT_BUDGET
) -> PreservationReport:
    """Check that an indecomposable summand with multiplicity stays indecomposable.

    ``phi`` is an augmentation of the corner (an :class:`Augmentation` or its
    value list).  A decomposable extension raises :class:`TheoremViolation`.
    """
    C = S.corner
    if not C.base.is_prime_field:
        raise PreconditionFailed("the corner must be an algebra over a prime field")
    steps = []
    verdict = is_connected(C, budget)
    if not verdict.connected:
        raise PreconditionFailed(f"corner is not certified connected ({verdict.status.value})")
    steps.append(("corner connected", f"{verdict.certification.value} on dim {C.dim}"))
    phi = _coerce_augmentation(C, phi)
    steps.append(("augmentation is a unital ring morphism", "checked on all basis pairs"))
    try:
        N = nilradical_via_augmentation(C, phi)
    except NotConnectedEvidence as exc:
        raise TheoremViolation(f"kernel of the augmentation is not nil: {exc}") from exc
    steps.append(("kernel of augmentation is nil", f"dim {N.dim} = {C.dim} - 1"))
    ext = coeff_extend(S, m)
    ext_verdict = is_connected(ext.corner, budget)
    if ext.corner.dim != C.dim:
        raise TheoremViolation("extension of the corner changed its dimension")
    if ext_verdict.status is Status.DECOMPOSABLE:
        raise TheoremViolation(
            f"extension to {ext.ring.base!r} decomposes with witness {ext_verdict.witness!r}"
        )
    steps.append(
        (f"extended corner over {ext.ring.base!r} connected", ext_verdict.certification.value)
    )
    return PreservationReport(S, ext, ext_verdict, tuple(steps))


def galois_spec_motive(n: int, p: int, budget: int = DEFAULT_BUDGET) -> DecompositionLedger:
    """Decompose F_p[C_n], the endomorphism ring of a cyclic Galois algebra's motive."""
    if n < 1:
        raise ValueError("group order must be >= 1")
    F = ff_make(p, 1)
    R = alg_cyclic_group_algebra(n, F)
    ledger = DecompositionLedger(F)
    report = block_decompose(R, budget)
    ledger.log(f"{R.label}: {len(report.blocks)} block(s), certification {report.certification.value}")
    for i, b in enumerate(report.blocks):
        S = SummandModel(R, b.idempotent, label=f"S{i}")
        v = is_indecomposable(S, budget)
        ledger.entries.append(LedgerEntry(S, b.dim, b.is_field, v))
        ledger.log(
            f"  S{i}: pi={b.idempotent.to_json()} corner dim {b.dim}, "
            f"field={b.is_field}, {v.status.value}"
        )
    ledger.verify()
    return ledger


def canonical_witness(S: SummandModel, L: FiniteField) -> AlgebraElement:
    """alpha * pi + x * pi in the extended ring, alpha the generator of L.

    For the dimension-2 block of F_2[C_3] this is the idempotent 1(x)alpha + alpha(x)1.
    """
    R = alg_scalar_extend(S.ring, L.k) if S.ring.base != L else S.ring
    pi = R.from_codes(S.pi.codes)
    x = R.basis(1)
    return pi * L.gen + x * pi


def counterexample_demo(budget: int = DEFAULT_BUDGET) -> DecompositionLedger:
    """Rebuild the F_2[C_3] example and assert each of its five claims."""
    F2 = ff_make(2, 1)
    F4 = ff_make(2, 2)
    R = alg_cyclic_group_algebra(3, F2)
    ledger = DecompositionLedger(F2)

    def check(step: int, claim: str, ok: bool) -> None:
        ledger.steps.append((step, claim, bool(ok)))
        ledger.log(f"[{'ok' if ok else 'FAIL'}] step {step}: {claim}")
        if not ok:
            raise DemoAssertionFailed(step, claim)

    report = block_decompose(R, budget)
    for i, b in enumerate(report.blocks):
        S = SummandModel(R, b.idempotent, label="M" if b.dim == 1 else "N")
        ledger.entries.append(LedgerEntry(S, b.dim, b.is_field, is_indecomposable(S, budget)))
    ledger.verify()
    check(1, "F_2[C_3] has exactly two blocks, of dims {1, 2}",
          sorted(report.dims()) == [1, 2])

    entry_N = next(e for e in ledger.entries if e.corner_dim == 2)
    N = entry_N.summand
    check(2, "the dim-2 block N has a corner that is a field with 4 elements",
          entry_N.is_field is True and N.corner.cardinality == 4
          and entry_N.verdict.connected)

    N4 = coeff_extend(N, 2)
    v = is_indecomposable(N4, budget)
    check(3, "N extended to F_4 coefficients is decomposable", v.status is Status.DECOMPOSABLE)

    w = v.witness
    w_ok = is_idempotent(w) and not w.is_zero() and w != N4.corner.one
    cw = canonical_witness(N, F4)
    cw_ok = (
        is_idempotent(cw)
        and not cw.is_zero()
        and cw != N4.pi
        and restrict(N4.corner, cw) is not None
    )
    # same witness in the presentation F_2[x]/(x^2+x+1) (x) F_4
    F4a = alg_poly_quotient(F2, Polynomial(F2, [1, 1, 1]))
    T = alg_scalar_extend(F4a, 2)
    tw = is_connected(T, budget).witness
    tw_ok = tw is not None and tw == T.scalar(F4.gen) + T.basis(1)
    T2 = alg_tensor(F4a, F4a)
    t2w = is_connected(T2, budget).witness
    t2_ok = t2w is not None and t2w.to_json() == [0, 1, 1, 0]
    ledger.log(f"  exhaustive witness in the extended corner: {w.to_json()}")
    ledger.log(f"  canonical witness alpha*pi + x*pi in F_4[C_3]: {cw.to_json()}")
    check(4, "witness idempotents verified, including alpha*1 + xbar (= 1(x)alpha + alpha(x)1)",
          w_ok and cw_ok and tw_ok and t2_ok)

    R4 = alg_scalar_extend(R, 2)
    report4 = block_decompose(R4, budget)
    ledger.log(f"  F_4[C_3] blocks: {report4.dims()}")
    check(5, "F_4[C_3] has three blocks, so two summands split off over F_4",
          len(report4.blocks) == 3)
    return ledger
