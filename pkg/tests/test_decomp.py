import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.algebra import (
    alg_cyclic_group_algebra,
    alg_direct_product,
    alg_field,
    alg_matrix,
    alg_poly_quotient,
    alg_scalar_extend,
    alg_tensor,
    find_augmentations,
    is_idempotent,
)
from finalg.checks import exhaustive_primitive_count
from finalg.corpus import corpus
from finalg.decomp import (
    Certification,
    Status,
    block_decompose,
    center,
    corner,
    frobenius_fixed_subalgebra,
    is_connected,
    is_field,
    krull_schmidt_check,
    primitive_idempotents,
    split_by_element,
)
from finalg.errors import NotCommutative, NotFixed, NotIdempotent, ScalarElement
from finalg.gfield import ff_make
from finalg.polyfactor import Polynomial

F2, F3, F4 = ff_make(2, 1), ff_make(3, 1), ff_make(2, 2)
ALPHA = F4.gen


def quotient(F, *coeffs):
    return alg_poly_quotient(F, Polynomial(F, list(coeffs)))


def json_set(elements):
    return sorted(e.to_json() for e in elements)


@pytest.fixture
def c3():
    return alg_cyclic_group_algebra(3, F2)


def test_frobenius_fixed_examples():
    B = frobenius_fixed_subalgebra(quotient(F2, 1, 0, 0, 1))
    assert json_set(B.vectors) == [[0, 1, 1], [1, 0, 0]]
    assert frobenius_fixed_subalgebra(quotient(F2, 1, 1, 1)).dim == 1
    assert frobenius_fixed_subalgebra(quotient(F2, 0, 0, 1)).dim == 1
    with pytest.raises(NotCommutative):
        frobenius_fixed_subalgebra(alg_matrix(F2, 2))


def test_split_by_element_examples():
    A = quotient(F2, 1, 0, 0, 1)
    system = split_by_element(A, A.element([0, 1, 1]))
    assert json_set(system) == [[0, 1, 1], [1, 1, 1]]
    system.verify()

    P = alg_direct_product(alg_field(F2), alg_field(F2))
    assert json_set(split_by_element(P, P.element([1, 0]))) == [[0, 1], [1, 0]]

    # F_4[x]/(x^2+x+1), b = x: the factors x+alpha, x+alpha^2 are themselves idempotent
    B = quotient(F4, 1, 1, 1)
    x = B.basis(1)
    system = split_by_element(B, x)
    system.verify()
    assert set(system) == {x + ALPHA, x + ALPHA**2}
    for e in system:
        assert is_idempotent(e)


def test_split_by_element_errors():
    A = quotient(F2, 1, 0, 0, 1)
    with pytest.raises(ScalarElement):
        split_by_element(A, A.one)
    with pytest.raises(NotFixed):
        split_by_element(A, A.basis(1))


def test_primitive_idempotents_examples(c3):
    sysm = primitive_idempotents(c3)
    assert json_set(sysm) == [[0, 1, 1], [1, 1, 1]]
    assert sorted(corner(c3, e).dim for e in sysm) == [1, 2]
    sysm.verify()
    ext = primitive_idempotents(alg_scalar_extend(c3, 2))
    assert len(ext) == 3
    assert all(corner(ext.idems[0].algebra, e).dim == 1 for e in ext)
    assert json_set(primitive_idempotents(quotient(F2, 1, 1, 1))) == [[1, 0]]
    with pytest.raises(NotCommutative):
        primitive_idempotents(alg_matrix(F2, 2))


def test_corner_examples(c3):
    C = corner(c3, c3.element([0, 1, 1]))
    assert C.dim == 2 and is_field(C) is True and C.cardinality == 4
    # a root of t^2 + t + 1 exists in the corner, so it is F_4
    assert any((g * g + g + C.one).is_zero() for g in C.elements())
    D = corner(c3, c3.element([1, 1, 1]))
    assert D.dim == 1 and is_field(D) is True
    assert corner(c3, c3.one).dim == 3
    with pytest.raises(NotIdempotent):
        corner(c3, c3.basis(1))


def test_is_connected_examples():
    f4 = quotient(F2, 1, 1, 1)
    v = is_connected(f4)
    assert v.status is Status.CONNECTED and v.certification is Certification.EXHAUSTIVE_SCAN

    v = is_connected(alg_tensor(f4, f4))
    assert v.status is Status.DECOMPOSABLE
    assert v.witness.to_json() == [0, 1, 1, 0]  # 1 (x) alpha + alpha (x) 1

    E = alg_scalar_extend(f4, 2)
    v = is_connected(E)
    assert v.witness == E.scalar(ALPHA) + E.basis(1)

    M = alg_matrix(F2, 2)
    v = is_connected(M)
    assert v.status is Status.DECOMPOSABLE and v.witness.to_json() == [1, 0, 0, 0]


def test_center_examples():
    A = quotient(F3, 1, 1, 0, 1)
    assert center(A).dim == A.dim
    Z = center(alg_matrix(F2, 2))
    assert Z.dim == 1 and Z.vectors[0].to_json() == [1, 0, 0, 1]


def test_block_decompose_examples(c3):
    rep = block_decompose(c3)
    assert sorted(rep.dims()) == [1, 2]
    big = next(b for b in rep.blocks if b.dim == 2)
    assert big.is_field and big.corner.cardinality == 4
    assert block_decompose(alg_scalar_extend(c3, 2)).dims() == [1, 1, 1]
    rep = block_decompose(quotient(F2, 0, 0, 1))
    assert rep.dims() == [2] and rep.blocks[0].is_field is False


def test_noncommutative_blocks_are_central():
    rep = block_decompose(alg_matrix(F2, 2))
    assert rep.certification is Certification.CENTRAL_ONLY
    assert rep.dims() == [4] and rep.blocks[0].is_field is False


def test_krull_schmidt_examples(c3):
    assert krull_schmidt_check(c3, trials=20, seed=0)
    assert krull_schmidt_check(alg_scalar_extend(c3, 2), trials=20, seed=0)
    assert krull_schmidt_check(quotient(F3, 1, 0, 1), trials=5, seed=3)


def test_large_commutative_algebra_uses_frobenius():
    A = alg_cyclic_group_algebra(9, F3)  # 3^9 elements, local
    v = is_connected(A, budget=4096)
    assert v.status is Status.CONNECTED
    assert v.certification is Certification.COMMUTATIVE_FROBENIUS
    B = alg_cyclic_group_algebra(10, F3)
    v = is_connected(B, budget=4096)
    assert v.status is Status.DECOMPOSABLE and is_idempotent(v.witness)


def test_extension_preserves_connectedness_with_augmentation():
    # ring-level analog of preservation: connected + augmentation survives extension to F_4, F_8
    count = 0
    for e in corpus():
        A = e.algebra
        if A.base != F2 or e.family == "extra" or not A.augmentations:
            continue
        if is_connected(A).status is not Status.CONNECTED:
            continue
        for m in (2, 3):
            assert is_connected(alg_scalar_extend(A, m)).status is Status.CONNECTED, (e.name, m)
        count += 1
    assert count > 10


def test_counterexample_needs_no_augmentation():
    f4 = quotient(F2, 1, 1, 1)
    assert is_connected(f4).connected
    assert find_augmentations(f4) == []
    assert is_connected(alg_scalar_extend(f4, 2)).status is Status.DECOMPOSABLE


commutative_entries = [e for e in corpus() if e.algebra.commutative and e.algebra.cardinality <= 729]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(commutative_entries), st.integers(0, 2**32 - 1))
def test_primitive_system_complete(entry, seed):
    A = entry.algebra
    system = primitive_idempotents(A, np.random.default_rng(seed))
    system.verify()
    assert sum(corner(A, e).dim for e in system) == A.dim
    assert len(system) == frobenius_fixed_subalgebra(A).dim == exhaustive_primitive_count(entry)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(commutative_entries))
def test_verdict_agrees_with_exhaustive_count(entry):
    v = is_connected(entry.algebra)
    assert v.connected == (exhaustive_primitive_count(entry) == 1)
