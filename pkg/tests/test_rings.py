from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgfc.errors import (DegenerateLocalizationError, NoPrimeError, NotAMemberError, RingError,
                         ZeroElementError)
from fgfc.rings import (INTEGERS, QQ_RING, IntegersMod, PrimeField, ValuationRing, ValueVector,
                        localize, min_primes_base, quotient_ring, smallest_prime_containing,
                        value_of)
from fgfc.rings.base import BasePrime


def rand_val_element(V: ValuationRing, rng: random.Random):
    """A random element of V: polynomial numerator over a unit denominator."""
    t = V.gens
    num = V.zero
    for _ in range(rng.randint(1, 3)):
        term = V.scalar(rng.randint(-4, 4))
        for g in t:
            term *= g ** rng.randint(0, 2)
        num += term
    den = V.one + sum((V.scalar(rng.randint(-2, 2)) * g for g in t), V.zero)
    if not den.numer or V.value(den) != ValueVector.zero(V.rank):
        den = V.one
    return num / den


RINGS = {
    "Q": (QQ_RING, lambda r: Fraction(r.randint(-9, 9), r.randint(1, 5))),
    "F7": (PrimeField(7), lambda r: r.randrange(7)),
    "Z": (INTEGERS, lambda r: r.randint(-50, 50)),
    "Z/12": (IntegersMod(12), lambda r: r.randrange(12)),
}


@pytest.mark.parametrize("name", sorted(RINGS) + ["V2"])
def test_ring_axioms_on_1000_triples(name):
    rng = random.Random(sum(map(ord, name)))
    if name == "V2":
        R = ValuationRing(2)
        draw = lambda r: rand_val_element(R, r)  # noqa: E731
    else:
        R, draw = RINGS[name]
    for _ in range(1000):
        a, b, c = (R.convert(draw(rng)) for _ in range(3))
        assert R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)))
        assert R.eq(R.add(R.add(a, b), c), R.add(a, R.add(b, c)))
        assert R.eq(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)))
        assert R.is_zero(R.add(a, R.neg(a)))
        assert R.eq(R.mul(a, b), R.mul(b, a))


def test_prime_field_rejects_composite():
    with pytest.raises(RingError):
        PrimeField(4)


def test_zmod_rejects_small_modulus():
    with pytest.raises(RingError):
        IntegersMod(1)


# -- min_primes_base --------------------------------------------------------

def test_min_primes_of_six_over_z():
    assert [q.value for q in min_primes_base(INTEGERS, [6])] == [2, 3]


def test_min_primes_of_zero_over_q():
    (q,) = min_primes_base(QQ_RING, [0])
    assert q.kind == "zero"


def test_min_primes_of_t1_t2_over_v2():
    V = ValuationRing(2)
    t1, t2 = V.gens
    (q,) = min_primes_base(V, [t1 * t2])
    assert (q.kind, q.value) == ("chain", 1)


def test_min_primes_of_unit_and_zero_over_fields():
    assert min_primes_base(PrimeField(5), [3]) == []
    assert [q.kind for q in min_primes_base(PrimeField(5), [0, 0])] == ["zero"]


def test_min_primes_over_zmod():
    R = IntegersMod(12)
    assert [q.value for q in min_primes_base(R, [])] == [2, 3]
    assert [q.value for q in min_primes_base(R, [3])] == [3]
    assert min_primes_base(R, [5]) == []


def test_min_primes_over_valuation_ring():
    V = ValuationRing(3)
    t1, t2, t3 = V.gens
    assert [q.value for q in min_primes_base(V, [])] == [0]
    assert [q.value for q in min_primes_base(V, [t2 ** 2, t2 * t3])] == [2]
    assert [q.value for q in min_primes_base(V, [t3 ** 2, t2 * t3])] == [3]
    assert [q.value for q in min_primes_base(V, [t1 + t3])] == [3]
    assert min_primes_base(V, [1 + t1]) == []


@given(st.lists(st.integers(-60, 60), min_size=1, max_size=4))
def test_min_primes_z_contain_generators_and_are_incomparable(gens):
    qs = min_primes_base(INTEGERS, gens)
    for q in qs:
        assert all(INTEGERS.contains(q, a) for a in gens)
    for a in qs:
        for b in qs:
            if a is not b:
                assert not INTEGERS.prime_le(a, b)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(1, 3)),
                min_size=1, max_size=3))
def test_min_primes_v_is_smallest_prime_of_min_value_generator(mons):
    V = ValuationRing(2)
    t1, t2 = V.gens
    gens = [c * t1 ** a * t2 ** b for a, b, c in mons]
    qs = min_primes_base(V, gens)
    best = min(gens, key=V.value)
    if V.unit_inverse(best) is not None:
        assert qs == []
    else:
        assert qs == [smallest_prime_containing(V, best)]
        assert all(V.contains(qs[0], g) for g in gens)


# -- localization and quotients -------------------------------------------

def test_localize_z_at_two():
    L = localize(INTEGERS, 2)
    assert [q.value for q in min_primes_base(L, [3])] == [3]
    assert [q.value for q in min_primes_base(L, [6])] == [3]
    assert L.unit_inverse(L.convert(2)) is not None


def test_localize_v2_at_t1_is_fraction_field():
    V = ValuationRing(2)
    t1, t2 = V.gens
    L = localize(V, t1)
    rng = random.Random(3)
    for _ in range(50):
        a = rand_val_element(V, rng)
        if a.numer:
            assert L.unit_inverse(L.convert(a)) is not None
    assert [q.value for q in min_primes_base(L, [])] == [0]


def test_localize_field_is_unchanged():
    L = localize(QQ_RING, 5)
    assert [q.kind for q in min_primes_base(L, [0])] == ["zero"]
    assert min_primes_base(L, [7]) == []


def test_localize_at_zero_is_an_error():
    with pytest.raises(DegenerateLocalizationError):
        localize(INTEGERS, 0)


def test_quotients():
    assert [q.value for q in quotient_ring(INTEGERS, [12]).min_primes([])] == [2, 3]
    V = ValuationRing(2)
    assert [q.value for q in quotient_ring(V, [V.gens[0]]).min_primes([])] == [1]
    Z = quotient_ring(QQ_RING, [1])
    assert Z.is_zero_ring() and Z.min_primes([]) == []


@given(st.lists(st.integers(-40, 40), min_size=1, max_size=3), st.integers(1, 40))
def test_localization_consistency_z(gens, c):
    L = localize(INTEGERS, c)
    here = sorted(q.value for q in min_primes_base(INTEGERS, gens)
                  if not INTEGERS.contains(q, c))
    there = sorted(q.value for q in min_primes_base(L, gens))
    assert here == there


# -- valuations -------------------------------------------------------------

def test_value_examples():
    V = ValuationRing(2)
    t1, t2 = V.gens
    assert value_of(V, t1).coords == (1, 0)
    assert value_of(V, t1 ** 2 + t2).coords == (0, 1)
    with pytest.raises(NotAMemberError):
        value_of(V, (t1 ** 2 + t2) / t1)
    assert value_of(V, V.zero).is_infinite


def test_smallest_prime_examples():
    V = ValuationRing(2)
    t1, t2 = V.gens
    assert smallest_prime_containing(V, t1).value == 1
    assert smallest_prime_containing(V, t2).value == 2
    with pytest.raises(NoPrimeError):
        smallest_prime_containing(V, V.one)
    with pytest.raises(ZeroElementError):
        smallest_prime_containing(V, V.zero)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_valuation_law(sa, sb):
    V = ValuationRing(3)
    a = rand_val_element(V, random.Random(sa))
    b = rand_val_element(V, random.Random(sb))
    if not a.numer or not b.numer:
        return
    va, vb = value_of(V, a), value_of(V, b)
    assert value_of(V, a * b) == va + vb
    s = a + b
    if s.numer:
        vs = value_of(V, s)
        assert not vs < min(va, vb)
        if va != vb:
            assert vs == min(va, vb)


@given(st.integers(0, 10_000))
def test_chain_membership_is_monotone(seed):
    V = ValuationRing(3)
    a = rand_val_element(V, random.Random(seed))
    inside = [V.contains(BasePrime(V, "chain", j), a) for j in range(4)]
    for j in range(3):
        if inside[j]:
            assert inside[j + 1]


def test_value_vector_order():
    inf = ValueVector.infinity()
    assert ValueVector((0, 5)) < ValueVector((1, -3)) < inf
    assert not inf < ValueVector((9, 9))
