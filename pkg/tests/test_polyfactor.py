import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finalg.algebra import alg_poly_quotient
from finalg.decomp import frobenius_fixed_subalgebra
from finalg.errors import ConstantInput, DegreeTooLarge, DivisionByZero, FieldMismatch, NotMonic
from finalg.gfield import ff_make
from finalg.polyfactor import (
    Polynomial,
    distinct_degree,
    factor,
    is_irreducible,
    poly_divmod,
    poly_gcd,
    squarefree_decomposition,
)

F2, F3, F4 = ff_make(2, 1), ff_make(3, 1), ff_make(2, 2)
ALPHA = F4.gen


def P(F, *coeffs):
    return Polynomial(F, list(coeffs))


def all_monic(F, d):
    for lower in itertools.product(range(F.q), repeat=d):
        yield Polynomial(F, [F.from_code(c) for c in lower] + [F.one])


def irreducible_by_trial_division(f):
    # independent oracle: no monic divisor of degree 1..deg/2
    F = f.field
    for d in range(1, f.degree // 2 + 1):
        for g in all_monic(F, d):
            if (f % g).degree < 0:
                return False
    return True


def test_gcd_and_divmod_examples():
    f = P(F2, 1, 0, 0, 1)
    g = P(F2, 1, 1, 1)
    assert poly_gcd(f, g) == g
    q, r = poly_divmod(f, P(F2, 1, 1))
    assert q == g and r.degree == -1
    assert (P(F2, 1, 1) * g) == f


def test_gcd_with_zero_is_monic():
    f = P(F3, 2, 0, 2)
    assert poly_gcd(f, Polynomial(F3, [])) == P(F3, 1, 0, 1)


def test_polynomial_errors():
    with pytest.raises(DivisionByZero):
        poly_divmod(P(F2, 1, 1), Polynomial(F2, []))
    with pytest.raises(FieldMismatch):
        P(F2, 1, 1) + P(F3, 1, 1)
    with pytest.raises(NotMonic):
        is_irreducible(P(F3, 1, 2))
    with pytest.raises(ConstantInput):
        is_irreducible(P(F2, 1))
    with pytest.raises(ConstantInput):
        factor(P(F2, 1))
    with pytest.raises(DegreeTooLarge):
        factor(Polynomial(F2, [1] + [0] * 64 + [1]))


def test_irreducibility_examples():
    assert is_irreducible(P(F2, 1, 1, 1))
    assert not is_irreducible(P(F4, 1, 1, 1))
    assert not is_irreducible(P(F2, 1, 0, 1))


@pytest.mark.parametrize("F", [F2, F3, F4], ids=repr)
def test_rabin_agrees_with_trial_division(F):
    top = {2: 6, 3: 4, 4: 3}[F.q]
    for d in range(1, top + 1):
        for f in all_monic(F, d):
            assert is_irreducible(f) == irreducible_by_trial_division(f), f


def test_factor_examples():
    fl = factor(P(F2, 1, 0, 0, 1))
    assert fl.factors == ((P(F2, 1, 1), 1), (P(F2, 1, 1, 1), 1))

    fl = factor(P(F4, 1, 1, 1))
    roots = {ALPHA, ALPHA**2}
    assert len(fl.factors) == 2
    assert {g(r) == F4.zero for g, _ in fl.factors for r in roots} == {True, False}
    assert {(-g.coeffs[0]) for g, _ in fl.factors} == roots

    fl = factor(P(F4, 1, 0, 0, 1))
    assert [g.degree for g, _ in fl.factors] == [1, 1, 1]
    assert {-g.coeffs[0] for g, _ in fl.factors} == {F4.one, ALPHA, ALPHA**2}


def test_factor_with_multiplicity_and_unit():
    # 2 (x+1)^3 (x^2+1) over F_3, where x^2+1 is irreducible
    f = P(F3, 2) * P(F3, 1, 1) ** 3 * P(F3, 1, 0, 1)
    fl = factor(f)
    assert fl.unit == F3.elem(2)
    assert fl.factors == ((P(F3, 1, 1), 3), (P(F3, 1, 0, 1), 1))
    assert fl.expand() == f


def test_squarefree_handles_pth_powers():
    # x^4 + 1 = (x+1)^4 over F_2; derivative vanishes
    parts = squarefree_decomposition(P(F2, 1, 0, 0, 0, 1))
    assert parts == [(P(F2, 1, 1), 4)]


def test_distinct_degree_split():
    # x^5 - x over F_3 is x(x-1)(x+1)(x^2+1): linear part degree 3, quadratic part degree 2
    dd = dict((d, g) for g, d in distinct_degree(P(F3, 0, 2, 0, 0, 0, 1)))
    assert dd[1].degree == 3 and dd[2].degree == 2


def test_berlekamp_count_cross_check():
    # on squarefree monic f over F_2, #irreducible factors = dim ker(Frobenius - id) on F_2[x]/(f)
    checked = 0
    for d in range(1, 6):
        for f in all_monic(F2, d):
            if poly_gcd(f, f.derivative()).degree > 0:
                continue
            fixed = frobenius_fixed_subalgebra(alg_poly_quotient(F2, f)).dim
            assert len(factor(f).factors) == fixed, f
            checked += 1
    assert checked > 20


def test_factor_deterministic_for_seed():
    f = P(F4, 1, 0, 0, 0, 0, 1) * P(F4, ALPHA, 1, 0, 1)
    a = factor(f, np.random.default_rng(7))
    b = factor(f, np.random.default_rng(7))
    assert a == b


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from([F2, F3, F4]),
    st.integers(1, 8),
    st.integers(0, 2**32 - 1),
    st.data(),
)
def test_factor_round_trip(F, d, seed, data):
    lower = data.draw(st.lists(st.integers(0, F.q - 1), min_size=d, max_size=d))
    f = Polynomial(F, [F.from_code(c) for c in lower] + [F.one])
    fl = factor(f, np.random.default_rng(seed))
    assert fl.expand() == f
    for g, e in fl.factors:
        assert g.is_monic() and e >= 1
        assert is_irreducible(g)
    keys = [g.sort_key() for g, _ in fl.factors]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([F2, F3, F4]), st.data())
def test_divmod_identity(F, data):
    code = st.integers(0, F.q - 1)
    f = Polynomial(F, [F.from_code(c) for c in data.draw(st.lists(code, max_size=8))])
    g = Polynomial(F, [F.from_code(c) for c in data.draw(st.lists(code, min_size=1, max_size=5))])
    if g.degree < 0:
        return
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
