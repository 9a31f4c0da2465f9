from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgfc.constructions import op_family
from fgfc.engine import min_primes_univ
from fgfc.errors import FGFCError
from fgfc.poly import Poly, PolynomialRing
from fgfc.primes import (PrimeRep, contract_from_localization, ideal_in_prime, minimal_filter,
                         prime_contains)
from fgfc.rings import INTEGERS, QQ_RING, ValuationRing, localize
from fgfc.rings.base import BasePrime


@pytest.fixture(scope="module")
def v2_family():
    V = ValuationRing(2)
    gens = op_family(V, 2)
    primes, _ = min_primes_univ(V, gens)
    by_text = {q.render(): q for q in primes}
    return V, gens, by_text


def test_family_member_in_its_prime(v2_family):
    V, gens, P = v2_family
    assert ideal_in_prime(gens[:1], P["(t1*x - 1)"])


def test_x_plus_one_not_in_x():
    Q = QQ_RING
    (q,), _ = min_primes_univ(Q, [Poly.make(Q, "x", [0, 1])])
    assert not ideal_in_prime([Poly.make(Q, "x", [1, 1])], q)


def test_family_in_boundary_prime(v2_family):
    V, gens, P = v2_family
    assert ideal_in_prime(gens, P["(P2)"])


def test_zero_prime_is_contained_in_everything(v2_family):
    V, _, P = v2_family
    zero = PolynomialRing(V, "x").zero_prime()
    for q in P.values():
        assert prime_contains(q, zero)


def test_chain_and_polynomial_primes_are_incomparable(v2_family):
    _, _, P = v2_family
    assert not prime_contains(P["(P2)"], P["(P1; t2*x - 1)"])
    assert not prime_contains(P["(P1; t2*x - 1)"], P["(P2)"])
    assert minimal_filter(P.values()) == sorted(P.values(), key=lambda q: q.base.value)


def _z_prime(p: int, g=None) -> PrimeRep:
    T = PolynomialRing(INTEGERS, "x")
    return PrimeRep(BasePrime(INTEGERS, "principal", p), g, "x", T)


def test_minimal_filter_keeps_the_smaller_prime():
    out = minimal_filter([_z_prime(2), _z_prime(2, (0, 1))], [Poly.constant(INTEGERS, "x", 2)])
    assert [q.render() for q in out] == ["(2)"]
    assert minimal_filter([_z_prime(3)]) == [_z_prime(3)]


def test_minimal_filter_rejects_candidates_missing_the_ideal():
    with pytest.raises(FGFCError):
        minimal_filter([_z_prime(3)], [Poly.constant(INTEGERS, "x", 2)])


def test_contraction_clears_denominators():
    L = localize(INTEGERS, 2)
    (q,), _ = min_primes_univ(L, [Poly.make(L, "x", [L.convert(Fraction(3, 2)), L.one])])
    back = contract_from_localization(q, 2, INTEGERS)
    assert back.render() == "(2*x + 3)"
    assert not back.contains(Poly.constant(INTEGERS, "x", 2))
    assert back.contains(Poly.make(INTEGERS, "x", [3, 2]))


def test_contraction_of_zero_ideal_and_plain_primes():
    T = PolynomialRing(INTEGERS, "x")
    zero = T.zero_prime()
    assert contract_from_localization(zero, 5, INTEGERS) is zero
    assert contract_from_localization(_z_prime(3), 2, INTEGERS) == _z_prime(3)
    with pytest.raises(FGFCError):
        contract_from_localization(_z_prime(2), 2, INTEGERS)


def _random_z_ideal(rng: random.Random):
    return [Poly.make(INTEGERS, "x", [rng.randint(-6, 6) for _ in range(rng.randint(1, 3))])
            for _ in range(rng.randint(1, 2))]


@given(st.integers(0, 10_000))
def test_minimal_filter_invariants(seed):
    rng = random.Random(seed)
    I = _random_z_ideal(rng)
    pool = []
    for _ in range(3):
        extra = I + _random_z_ideal(rng)
        primes, _ = min_primes_univ(INTEGERS, extra)
        pool += primes
    kept = minimal_filter(pool)
    for a in kept:
        for b in kept:
            if a is not b:
                assert not prime_contains(a, b)
    for q in pool:
        assert any(prime_contains(q, k) for k in kept)


@given(st.integers(0, 10_000))
def test_engine_primes_contain_the_ideal(seed):
    I = _random_z_ideal(random.Random(seed))
    primes, _ = min_primes_univ(INTEGERS, I)
    for q in primes:
        assert ideal_in_prime(I, q)
