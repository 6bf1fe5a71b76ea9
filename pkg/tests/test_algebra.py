import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.algebra import (
    Augmentation,
    CayleyTable,
    alg_cyclic_group_algebra,
    alg_direct_product,
    alg_field,
    alg_from_structure_constants,
    alg_group_algebra,
    alg_matrix,
    alg_poly_quotient,
    alg_scalar_extend,
    alg_tensor,
    batch_is_idempotent,
    cyclic_group,
    find_augmentations,
    group_direct_product,
    idempotent_power,
    idempotent_powers,
    induced_augmentation,
    is_idempotent,
    is_invertible,
    is_nilpotent,
    left_mult_matrix,
    multiplication_table,
    nilpotent_set_bruteforce,
    nilradical_via_augmentation,
    symmetric_group,
)
from finalg.errors import (
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
from finalg.gfield import ff_make
from finalg.polyfactor import Polynomial

F2, F3, F4 = ff_make(2, 1), ff_make(3, 1), ff_make(2, 2)


def quotient(F, *coeffs):
    return alg_poly_quotient(F, Polynomial(F, list(coeffs)))


@pytest.fixture
def cubic():
    return quotient(F2, 1, 0, 0, 1)  # F_2[x]/(x^3+1)


def test_poly_quotient_augmentations(cubic):
    assert cubic.dim == 3 and cubic.commutative
    assert [a.to_json() for a in cubic.augmentations] == [[1, 1, 1]]
    f4 = quotient(F2, 1, 1, 1)
    assert f4.dim == 2 and not f4.augmentations
    dual = quotient(F2, 0, 0, 1)
    assert [a.to_json() for a in dual.augmentations] == [[1, 0]]
    assert is_nilpotent(dual.basis(1))


def test_poly_quotient_requires_monic():
    with pytest.raises(NotMonic):
        quotient(F3, 1, 2)
    with pytest.raises(BaseMismatch):
        alg_poly_quotient(F3, Polynomial(F2, [1, 1]))


def test_cyclic_group_algebra_matches_quotient(cubic):
    G = alg_cyclic_group_algebra(3, F2)
    # basis g^i <-> x^i gives identical structure constants
    assert np.array_equal(G.table, cubic.table)


def test_trivial_group_is_base_field():
    for F in (F2, F3):
        A = alg_cyclic_group_algebra(1, F)
        assert A.dim == 1 and np.array_equal(A.table, alg_field(F).table)


def test_klein_four_over_f3():
    V = group_direct_product(cyclic_group(2), cyclic_group(2))
    A = alg_group_algebra(V, F3)
    assert A.dim == 4 and A.commutative
    assert [a.to_json() for a in A.augmentations] == [[1, 1, 1, 1]]


def test_bad_cayley_tables():
    with pytest.raises(BadCayleyTable) as exc:
        CayleyTable([[0, 1], [0, 1]])
    assert exc.value.axiom == "latin square"
    with pytest.raises(BadCayleyTable) as exc:
        # x*y = -x-y mod 3 is a Latin square but not associative
        CayleyTable([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    assert exc.value.axiom == "associativity"
    # identity other than 0 gets relabelled
    G = CayleyTable([[1, 0], [0, 1]])
    assert G.identity == 0 and np.array_equal(G.table, [[0, 1], [1, 0]])


def test_structure_constant_validation():
    with pytest.raises(InvalidStructureConstants):
        alg_from_structure_constants(F2, np.zeros((2, 2, 3)), [1, 0])
    # x*x = 1 but declared unit is x: unit law fails
    T = np.zeros((2, 2, 2), np.int64)
    T[0, 0, 0] = T[0, 1, 1] = T[1, 0, 1] = T[1, 1, 0] = 1
    with pytest.raises(InvalidStructureConstants):
        alg_from_structure_constants(F2, T, [0, 1])


def test_tensor_examples():
    f4 = quotient(F2, 1, 1, 1)
    T = alg_tensor(f4, f4)
    assert T.dim == 4 and T.base == F2
    A = quotient(F3, 1, 0, 2, 1)
    U = alg_tensor(A, alg_field(F3))
    assert np.array_equal(U.table, A.table)
    x = quotient(F2, 0, 0, 1)
    XY = alg_tensor(x, x)
    x1, y1, xy = XY.basis(2), XY.basis(1), XY.basis(3)  # i-major: index = i*2 + j
    assert x1 * y1 == xy
    assert (x1 * x1).is_zero()
    with pytest.raises(BaseMismatch):
        alg_tensor(x, quotient(F3, 0, 0, 1))


def test_scalar_extend():
    f4 = quotient(F2, 1, 1, 1)
    E = alg_scalar_extend(f4, 2)
    assert E.base == F4 and E.dim == 2
    assert alg_scalar_extend(f4, 1) is f4
    with pytest.raises(NonPrimeBase):
        alg_scalar_extend(E, 2)


def test_direct_product():
    P = alg_direct_product(alg_field(F2), alg_field(F2))
    assert P.dim == 2
    assert is_idempotent(P.element([1, 0])) and is_idempotent(P.element([0, 1]))
    Q = alg_direct_product(alg_field(F2), quotient(F2, 1, 1, 1))
    assert Q.dim == 3
    with pytest.raises(BaseMismatch):
        alg_direct_product(alg_field(F2), alg_field(F3))


def test_arithmetic_examples(cubic):
    a = cubic.element([1, 1, 0])
    assert (a**2).to_json() == [1, 0, 1]
    assert (a**3).to_json() == [0, 1, 1]
    assert a**1 == a
    with pytest.raises(AlgebraMismatch):
        a * quotient(F2, 1, 1, 1).one


def test_left_mult_matrix(cubic):
    assert np.array_equal(left_mult_matrix(cubic.one), np.eye(3))
    assert not left_mult_matrix(cubic.zero).any()
    shift = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert np.array_equal(left_mult_matrix(cubic.basis(1)), shift)


def test_element_predicates(cubic):
    dual = quotient(F2, 0, 0, 1)
    assert is_nilpotent(dual.basis(1)) and not is_invertible(dual.basis(1))
    assert is_invertible(cubic.basis(1)) and not is_nilpotent(cubic.basis(1))
    assert is_idempotent(cubic.element([0, 1, 1]))


def test_idempotent_power_examples(cubic):
    e, cyc = idempotent_power(cubic.element([1, 1, 0]))
    assert e.to_json() == [0, 1, 1]
    assert (cyc.preperiod, cyc.period, cyc.s) == (1, 3, 1)
    e, cyc = idempotent_power(cubic.zero)
    assert e.is_zero() and (cyc.preperiod, cyc.period) == (1, 1)
    e, cyc = idempotent_power(cubic.one)
    assert e == cubic.one and (cyc.preperiod, cyc.period) == (1, 1)


def test_nilpotent_sets():
    dual = quotient(F2, 0, 0, 1)
    assert [v.to_json() for v in nilpotent_set_bruteforce(dual)] == [[0, 0], [0, 1]]
    assert len(nilpotent_set_bruteforce(quotient(F2, 1, 1, 1))) == 1
    assert len(nilpotent_set_bruteforce(quotient(F2, 1, 0, 0, 1))) == 1
    with pytest.raises(BudgetExceeded):
        nilpotent_set_bruteforce(alg_cyclic_group_algebra(6, F3), budget=100)


def test_nilradical_examples():
    dual = quotient(F2, 0, 0, 1)
    N = nilradical_via_augmentation(dual, Augmentation(dual, [1, 0]))
    assert [v.to_json() for v in N.vectors] == [[0, 1]]
    cube = quotient(F3, 0, 0, 0, 1)
    N = nilradical_via_augmentation(cube, Augmentation(cube, [1, 0, 0]))
    assert sorted(v.to_json() for v in N.vectors) == [[0, 0, 1], [0, 1, 0]]
    C2 = alg_cyclic_group_algebra(2, F2)
    N = nilradical_via_augmentation(C2, C2.augmentations[0])
    (v,) = N.vectors
    assert v.to_json() == [1, 1] and (v * v).is_zero()


def test_nilradical_rejects_disconnected(cubic):
    with pytest.raises(NotConnectedEvidence):
        nilradical_via_augmentation(cubic, cubic.augmentations[0])


def test_augmentation_validation(cubic):
    with pytest.raises(InvalidAugmentation):
        Augmentation(cubic, [0, 1, 1])  # phi(1) != 1
    with pytest.raises(InvalidAugmentation):
        Augmentation(cubic, [1, 0, 0])  # x^2 * x = 1 but 0 * 0 != 1
    with pytest.raises(InvalidAugmentation):
        Augmentation(cubic, [1, 1])


def test_induced_augmentation():
    dual = quotient(F2, 0, 0, 1)
    E2 = quotient(F2, 1, 1, 1)  # F_4 presented over F_2
    T = alg_tensor(dual, E2)
    psi = induced_augmentation(T, dual.augmentations[0])
    assert psi(T.one) == E2.one
    K = psi.kernel()
    assert K.dim == 2
    for v in K.vectors:
        assert is_nilpotent(v)
    # x (x) 1 and x (x) alpha span the kernel
    assert {tuple(v.to_json()) for v in K.vectors} == {(0, 0, 1, 0), (0, 0, 0, 1)}
    with pytest.raises(NotATensor):
        induced_augmentation(dual, dual.augmentations[0])


def test_find_augmentations_exhaustive(cubic):
    assert [a.to_json() for a in find_augmentations(cubic)] == [[1, 1, 1]]
    assert find_augmentations(quotient(F2, 1, 1, 1)) == []
    assert find_augmentations(alg_matrix(F2, 2)) == []


def test_multiplication_table_matches_products():
    for A in (alg_cyclic_group_algebra(4, F2), quotient(F3, 1, 1, 0, 1), alg_matrix(F2, 2)):
        T = multiplication_table(A)
        X = A.all_elements_flat()
        P = A.mul_flat(X[:, None, :], X[None, :, :])
        assert np.array_equal(A.enumeration_index(P), T)


def test_batched_idempotent_powers_match_single():
    A = alg_tensor(alg_cyclic_group_algebra(3, F3), quotient(F3, 1, 0, 1))
    X = A.all_elements_flat()
    E, pre, per, s = idempotent_powers(A, X)
    assert batch_is_idempotent(A, E).all()
    for i in range(0, X.shape[0], 37):
        e, cyc = idempotent_power(A.element(A.from_flat(X[i]).tolist()))
        assert np.array_equal(e.flat, E[i])
        assert (cyc.preperiod, cyc.period, cyc.s) == (pre[i], per[i], s[i])


small_algebras = st.sampled_from([
    ("cubic", lambda: quotient(F2, 1, 0, 0, 1)),
    ("F3[C4]", lambda: alg_cyclic_group_algebra(4, F3)),
    ("M2", lambda: alg_matrix(F2, 2)),
    ("F4 dual", lambda: quotient(F4, 0, 0, 1)),
    ("F3[S3]", lambda: alg_group_algebra(symmetric_group(3), F3)),
])


@settings(max_examples=40, deadline=None)
@given(small_algebras, st.integers(0, 2**32 - 1), st.integers(0, 16))
def test_pow_agrees_with_repeated_mul(named, seed, n):
    A = named[1]()
    a = A.random_element(np.random.default_rng(seed))
    expect = A.one
    for _ in range(n):
        expect = expect * a
    assert a**n == expect


@settings(max_examples=40, deadline=None)
@given(small_algebras, st.integers(0, 2**32 - 1))
def test_idempotent_power_output(named, seed):
    A = named[1]()
    a = A.random_element(np.random.default_rng(seed))
    e, cyc = idempotent_power(a)
    assert is_idempotent(e)
    assert cyc.exponent >= max(cyc.preperiod, 1)
    assert cyc.exponent % cyc.period == 0
    assert a**cyc.exponent == e


@settings(max_examples=30, deadline=None)
@given(small_algebras, st.integers(0, 2**32 - 1))
def test_ring_axioms(named, seed):
    A = named[1]()
    rng = np.random.default_rng(seed)
    a, b, c = (A.random_element(rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert A.one * a == a == a * A.one


def test_all_elements_enumeration_order():
    A = quotient(F4, 1, 0, 1)
    codes = [tuple(A.from_flat(row).tolist()) for row in A.all_elements_flat()]
    assert codes == [(c0, c1) for c1, c0 in itertools.product(range(4), repeat=2)]
