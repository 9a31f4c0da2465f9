from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgfc.constructions import glued_algebra, op_family
from fgfc.engine import (DecompTrace, EngineContext, branch_quotient, min_primes_multi,
                         min_primes_univ, monic_case)
from fgfc.errors import CapabilityError, FGFCError
from fgfc.factor import FactorizationOracle
from fgfc.poly import Poly
from fgfc.primes import contract_from_localization, ideal_in_prime, prime_contains
from fgfc.rings import INTEGERS, QQ_RING, IntegersMod, PrimeField, ValuationRing, localize

Z = INTEGERS
F5 = PrimeField(5)


def zpoly(cs) -> Poly:
    return Poly.make(Z, "x", cs)


def rendered(R, gens, **kw) -> list[str]:
    primes, _ = min_primes_univ(R, gens, var="x", **kw)
    return [q.render() for q in primes]


def check_trace(node: DecompTrace) -> None:
    """Every quotient or reducing edge lowers the measure; monic hand-offs end the path."""
    for child in node.children:
        if child.kind == "quotient" or child.detail.get("case") == "reduce":
            assert child.measure < node.measure
        if child.detail.get("case") == "monic":
            assert all(g.kind == "monic" for g in child.children)
        check_trace(child)


def check_sound(R, gens, primes) -> None:
    for q in primes:
        assert ideal_in_prime(gens, q)
    for a in primes:
        for b in primes:
            if a is not b:
                assert not prime_contains(a, b)


# -- examples ---------------------------------------------------------------

def test_constant_six_over_z():
    primes, trace = min_primes_univ(Z, [Poly.constant(Z, "x", 6)])
    assert [q.render() for q in primes] == ["(2)", "(3)"]
    assert [n.kind for n in trace.walk()] == ["root", "d0"]


def test_linear_over_z():
    assert rendered(Z, [zpoly([3, 2])]) == ["(2*x + 3)"]


def test_quotient_branch_candidate_is_filtered():
    # Branch A yields (2; x), which strictly contains the final prime (x).
    primes, trace = min_primes_univ(Z, [zpoly([0, 1, 2])])
    assert sorted(q.render() for q in primes) == ["(2*x + 1)", "(x)"]
    quotient = next(n for n in trace.walk() if n.kind == "quotient")
    assert quotient.detail["c"] == "2"


def test_empty_and_unit_ideals():
    assert rendered(Z, []) == ["(0)"]
    assert rendered(QQ_RING, [Poly.constant(QQ_RING, "x", QQ_RING.one)]) == []


def test_zmod_twelve():
    R = IntegersMod(12)
    assert rendered(R, [Poly.make(R, "x", [0, 1])]) == ["(2; x)", "(3; x)"]


@pytest.mark.parametrize("k,expected", [
    (1, ["(t1*x - 1)", "(P1)"]),
    (2, ["(t1*x - 1)", "(P1; t2*x - 1)", "(P2)"]),
    (3, ["(t1*x - 1)", "(P1; t2*x - 1)", "(P2; t3*x - 1)", "(P3)"]),
])
def test_truncated_family_over_v3(k, expected):
    V = ValuationRing(3)
    primes, trace = min_primes_univ(V, op_family(V, k))
    assert [q.render() for q in primes] == expected
    check_trace(trace)
    check_sound(V, op_family(V, k), primes)


def test_glued_over_z():
    assert rendered(Z, glued_algebra(Z, [6], var="x")) == ["(2; x + 1)", "(3; x + 2)", "(x)"]


def test_branch_quotient_drops_top_term_and_adds_c():
    f, g = zpoly([1, 0, 3]), zpoly([5])
    out = branch_quotient([g, f], f, 3)
    assert [p.render() for p in out] == ["5", "1", "3"]


def test_monic_case_examples():
    assert [q.render() for q in monic_case(F5, Poly.make(F5, "x", [1, 0, 1]))] \
        == ["(x + 2)", "(x + 3)"]
    Q = QQ_RING
    assert [q.render() for q in monic_case(Q, Poly.make(Q, "x", [-2, 0, 1]))] == ["(x^2 - 2)"]
    with pytest.raises(FGFCError):
        monic_case(Z, zpoly([1, 2]))


def test_missing_oracle_reports_capability_with_path():
    ctx = EngineContext(oracle=FactorizationOracle(rationals=False))
    with pytest.raises(CapabilityError) as info:
        min_primes_univ(QQ_RING, [Poly.make(QQ_RING, "x", [-2, 0, 1])], ctx)
    assert info.value.capability == "factorization"
    assert info.value.path


def test_multi_examples():
    r = min_primes_multi(F5, ("x", "y"), [{(1, 1): 1}, {(2, 0): 1, (0, 1): -1}])
    assert r.rendered() == ["(x, y)"] and r.used == ("x", "y")
    r = min_primes_multi(Z, ("x", "y", "z"), [{(0, 2, 0): 1, (0, 1, 0): -1}, {(0, 1, 0): 6}])
    assert r.rendered() == ["(2; y + 1)", "(3; y + 2)", "(y)"] and r.used == ("y",)
    r = min_primes_multi(Z, ("x",), [{(0,): 6}])
    assert r.rendered() == ["(2)", "(3)"] and r.used == ()


def test_depth_bound_on_the_family():
    V = ValuationRing(3)
    _, trace = min_primes_univ(V, op_family(V, 3))
    assert trace.depth() <= trace.measure + 1
    assert trace.to_json()["kind"] == "root"
    assert "quotient" in trace.render()


# -- properties -------------------------------------------------------------

coeffs = st.lists(st.integers(-6, 6), min_size=1, max_size=4)


@given(st.lists(coeffs, min_size=1, max_size=3))
def test_engine_over_z_is_sound_and_measure_decreases(gens):
    I = [zpoly(cs) for cs in gens]
    primes, trace = min_primes_univ(Z, I, var="x")
    check_sound(Z, I, primes)
    check_trace(trace)
    assert trace.depth() <= trace.measure + 1


@given(st.integers(0, 10_000))
def test_engine_over_v2_is_sound(seed):
    rng = random.Random(seed)
    V = ValuationRing(2)
    t1, t2 = V.gens
    atoms = [V.one, t1, t2, t1 * t2, V.zero]
    I = [Poly.make(V, "x", [rng.choice(atoms) * rng.randint(-2, 2)
                            for _ in range(rng.randint(1, 3))]) for _ in range(rng.randint(1, 2))]
    primes, trace = min_primes_univ(V, I, var="x")
    check_sound(V, I, primes)
    check_trace(trace)


@given(st.lists(coeffs, min_size=1, max_size=2), st.integers(1, 12))
def test_localization_consistency(gens, c):
    I = [zpoly(cs) for cs in gens]
    here = sorted(q.render() for q in min_primes_univ(Z, I, var="x")[0]
                  if not q.contains(Poly.constant(Z, "x", c)))
    L = localize(Z, c)
    there = min_primes_univ(L, [p.change_ring(L) for p in I], var="x")[0]
    assert sorted(contract_from_localization(q, c, Z).render() for q in there) == here


@given(st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=4), min_size=1, max_size=3))
def test_rational_coefficients_match_integral_ones(gens):
    Q = QQ_RING
    Iq = [Poly.make(Q, "x", [Fraction(c, 2) for c in cs]) for cs in gens]
    Iz = [Poly.make(Q, "x", [Fraction(c) for c in cs]) for cs in gens]
    assert rendered(Q, Iq) == rendered(Q, Iz)
