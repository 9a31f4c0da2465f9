from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from fgfc.factor import irreducible_factors
from fgfc.fields import (RATIONALS, AlgebraicExtension, PrimeFieldGF, RationalFunctionField,
                         pdeg, pderiv, pdivmod, pgcd, pkey, pmonic, pmul, prem, ptrim)
from fgfc.oracle import _rff_factors, fp_distinct_factors, q_distinct_factors


def squarefree_part(K, f):
    f = ptrim(K, list(f))
    return pmonic(K, pdivmod(K, f, pgcd(K, f, pderiv(K, f)))[0])


def product(K, facs):
    out = [K.one]
    for g in facs:
        out = pmul(K, out, g)
    return out


def check_factorization(K, f, facs):
    assert len({pkey(K, g) for g in facs}) == len(facs)
    for g in facs:
        assert pdeg(g) >= 1
        assert not prem(K, ptrim(K, list(f)), g)
    if K.characteristic == 0:
        assert pkey(K, pmonic(K, product(K, facs))) == pkey(K, squarefree_part(K, f))


@given(st.lists(st.integers(0, 4), min_size=2, max_size=8).filter(lambda c: c[-1] % 5))
def test_fp_factors_match_exhaustive_search(cs):
    K = PrimeFieldGF(5)
    facs = irreducible_factors(K, cs)
    check_factorization(K, cs, facs)
    expected = {pkey(K, g) for g in fp_distinct_factors(cs, 5)}
    assert {pkey(K, g) for g in facs} == expected


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7).filter(lambda c: c[-1]))
def test_q_factors_match_kronecker_search(cs):
    K = RATIONALS
    f = [Fraction(c) for c in cs]
    facs = irreducible_factors(K, f)
    check_factorization(K, f, facs)
    assert {pkey(K, g) for g in facs} == {pkey(K, g) for g in q_distinct_factors(f)}


def test_x2_plus_1_over_f5_splits():
    K = PrimeFieldGF(5)
    assert sorted(tuple(g) for g in irreducible_factors(K, [1, 0, 1])) == [(2, 1), (3, 1)]


def test_gaussian_rationals_split_x2_plus_1():
    L = AlgebraicExtension(RATIONALS, [Fraction(1), Fraction(0), Fraction(1)], name="i")
    f = [L.embed(Fraction(1)), L.zero, L.one]
    facs = irreducible_factors(L, f)
    assert len(facs) == 2 and all(pdeg(g) == 1 for g in facs)
    assert all(not prem(L, f, g) for g in facs)


def test_finite_extension_of_f5():
    K = PrimeFieldGF(5)
    L = AlgebraicExtension(K, [2, 0, 1], name="u")  # u^2 = 3, irreducible mod 5
    f = [L.embed(2), L.zero, L.one]  # x^2 - 3 splits over L
    assert len(irreducible_factors(L, f)) == 2


def test_function_field_char0():
    K = RationalFunctionField(0, ("t",))
    t = K.variable("t")
    # (x - t)(x + 1/t) * 3
    f = [K.from_int(-3), 3 * (1 / t - t), K.from_int(3)]
    facs = irreducible_factors(K, f)
    check_factorization(K, f, facs)
    assert {pkey(K, g) for g in facs} == {pkey(K, g) for g in _rff_factors(K, f)}
    assert len(facs) == 2


def test_function_field_char3_frobenius_image():
    K = RationalFunctionField(3, ("t1", "t2"))
    t2 = K.variable("t2")
    # (x + 2)(t2 x^2 + 1): the Kronecker image has a ninth power
    f = [K.from_int(2), K.one, 2 * t2, t2]
    facs = irreducible_factors(K, f)
    check_factorization(K, f, facs)
    assert sorted(pdeg(g) for g in facs) == [1, 2]


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 2))
def test_function_field_products_of_linears(a, b, e):
    K = RationalFunctionField(0, ("t",))
    t = K.variable("t")
    g1 = [K.from_int(a) + t ** e, K.one]
    g2 = [K.from_int(b) * t, K.one]
    f = pmul(K, g1, g2)
    facs = irreducible_factors(K, f)
    check_factorization(K, f, facs)
    assert {pkey(K, g) for g in facs} == {pkey(K, g) for g in _rff_factors(K, f)}
