import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.errors import BadSubfieldSize, DegreeZero, DivisionByZero, FieldMismatch, NonPrime
from finalg.gfield import ff_add, ff_inv, ff_make, ff_mul, ff_neg, ff_pow, frobenius

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (7, 2), (2, 8)]


def test_prime_field_modulus_is_t():
    F = ff_make(2, 1)
    assert F.q == 2
    assert F.modulus == (0, 1)


def test_f4_modulus():
    assert ff_make(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_is_least_irreducible_quadratic():
    # independent oracle: a monic quadratic over F_3 is irreducible iff it has no root
    irreducible = []
    for c0, c1 in itertools.product(range(3), repeat=2):
        if all((c0 + c1 * r + r * r) % 3 for r in range(3)):
            irreducible.append((c0, c1, 1))
    assert ff_make(3, 2).modulus == min(irreducible)
    assert ff_make(3, 2).modulus == (1, 0, 1)


def test_errors():
    with pytest.raises(NonPrime):
        ff_make(4, 1)
    with pytest.raises(NonPrime):
        ff_make(1, 1)
    with pytest.raises(DegreeZero):
        ff_make(2, 0)
    with pytest.raises(DivisionByZero):
        ff_inv(ff_make(3, 1).zero)
    with pytest.raises(FieldMismatch):
        ff_add(ff_make(2, 2).gen, ff_make(2, 3).gen)
    with pytest.raises(BadSubfieldSize):
        frobenius(ff_make(2, 2).gen, 3)


def test_f4_arithmetic():
    F = ff_make(2, 2)
    a = F.gen
    assert ff_mul(a, a) == a + 1
    assert ff_inv(a) == a + 1
    assert a * (a + 1) == F.one
    assert ff_neg(a) == a


def test_pow_zero_is_one():
    for p, k in SMALL_FIELDS[:6]:
        F = ff_make(p, k)
        assert ff_pow(F.zero, 0) == F.one
        assert ff_pow(F.gen, 0) == F.one


def test_frobenius_examples():
    F = ff_make(2, 2)
    assert frobenius(F.gen, 2) == F.gen + 1
    assert frobenius(F.one, 2) == F.one
    F8 = ff_make(2, 3)
    for a in F8.elements():
        assert frobenius(frobenius(frobenius(a, 2), 2), 2) == a


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_every_element_is_fixed_by_full_frobenius(p, k):
    F = ff_make(p, k)
    codes = np.arange(F.q)
    assert np.array_equal(F.vpow(codes, F.q), codes)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_inverse_exhaustive(p, k):
    F = ff_make(p, k)
    nz = np.arange(1, F.q)
    assert np.all(F.vmul(nz, F.vinv(nz)) == 1)


@pytest.mark.parametrize("p,k", SMALL_FIELDS[:8])
def test_frobenius_is_additive_exhaustive(p, k):
    F = ff_make(p, k)
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    lhs = F.vpow(F.vadd(a, b), p)
    rhs = F.vadd(F.vpow(a, p), F.vpow(b, p))
    assert np.array_equal(lhs, rhs)


def test_vectorized_matches_scalar():
    F = ff_make(3, 2)
    for x, y in itertools.product(F.elements(), repeat=2):
        assert (x * y).code == int(F.vmul(x.code, y.code))
        assert (x + y).code == int(F.vadd(x.code, y.code))


fields = st.sampled_from(SMALL_FIELDS)


@settings(max_examples=60, deadline=None)
@given(fields, st.data())
def test_field_axioms(pk, data):
    F = ff_make(*pk)
    code = st.integers(0, F.q - 1)
    a, b, c = (F.from_code(data.draw(code)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == F.zero
    if a != F.zero:
        assert a * ff_inv(a) == F.one
        assert ff_pow(a, F.q - 1) == F.one


@settings(max_examples=30, deadline=None)
@given(fields)
def test_ff_make_is_deterministic(pk):
    F, G = ff_make(*pk), ff_make(*pk)
    assert F.modulus == G.modulus
    assert F == G
    assert np.array_equal(F._reduction, G._reduction)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7).filter(lambda p: p in (2, 3, 5, 7)), st.integers(1, 3))
def test_generated_modulus_is_irreducible(p, k):
    # a degree-k polynomial (k <= 3) is irreducible iff it has no root in F_p
    m = ff_make(p, k).modulus
    if k > 1:
        assert all(sum(c * r**i for i, c in enumerate(m)) % p for r in range(p))
