from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgfc.constructions import op_family
from fgfc.engine import min_primes_multi, min_primes_univ
from fgfc.oracle import (CorpusSpec, bivariate_certificate_oracle, corpus_compare,
                         fitting_support_oracle, gcd_factor_oracle, univariate_engine_set,
                         valuation_engine_set, valuation_oracle_set, valuation_shape_oracle)
from fgfc.poly import Poly
from fgfc.rings import INTEGERS, PrimeField, ValuationRing

F5 = PrimeField(5)


def fpoly(cs) -> Poly:
    return Poly.make(F5, "x", cs)


def test_gcd_oracle_examples():
    got = gcd_factor_oracle([fpoly([-1, 0, 1]), fpoly([0, -1, 0, 1])])
    assert got == {("poly", (1, 1)), ("poly", (4, 1))}
    assert gcd_factor_oracle([fpoly([0, 1]), fpoly([1, 1])]) == frozenset()
    assert gcd_factor_oracle([fpoly([])], F5) == {("zero",)}


def test_valuation_oracle_examples():
    V = ValuationRing(2)
    fam = op_family(V, 2)
    shapes = valuation_shape_oracle(V, fam)
    primes, _ = min_primes_univ(V, fam)
    assert valuation_oracle_set(V, shapes) == valuation_engine_set(V, primes)
    assert len(shapes) == 3
    t1 = Poly.constant(V, "x", V.gens[0])
    assert [(s.j, s.g) for s in valuation_shape_oracle(V, [t1])] == [(1, None)]
    assert valuation_shape_oracle(V, [Poly.constant(V, "x", V.one)]) == []


def test_fitting_oracle_examples():
    assert fitting_support_oracle(INTEGERS, [[2, 0], [0, 3]]) == ["(2)", "(3)"]
    assert fitting_support_oracle(INTEGERS, [[1, 0], [0, 0]]) == ["(0)"]
    assert fitting_support_oracle(F5, [[1, 2, 0], [0, 1, 3]]) == []


def test_bivariate_certificate_accepts_engine_and_rejects_wrong_answers():
    terms = [{(1, 1): 1}, {(2, 0): 1, (0, 1): -1}]
    r = min_primes_multi(F5, ("x", "y"), terms)
    assert bivariate_certificate_oracle(r.primes, r.gens, 5)["agree"]
    terms = [{(1, 1): 1}]  # xy: minimal primes (x) and (y)
    r = min_primes_multi(F5, ("x", "y"), terms)
    assert sorted(r.rendered()) == ["(x)", "(y)"]
    assert bivariate_certificate_oracle(r.primes, r.gens, 5)["agree"]
    bad = bivariate_certificate_oracle(r.primes[:1], r.gens, 5)
    assert not bad["agree"] and not bad["radical"]


def _solve(R, gens):
    return min_primes_univ(R, gens, var="x")


def test_corpus_is_deterministic_and_agrees():
    spec = CorpusSpec(ring="Fp(5)", seed=7)
    a = corpus_compare(spec, 30, _solve)
    b = corpus_compare(spec, 30, _solve, jobs=3)
    assert a.dumps() == b.dumps()
    assert a.agreements == a.trials == 30
    assert "30/30" in a.text()


def test_empty_corpus():
    rep = corpus_compare(CorpusSpec(ring="Q"), 0, _solve)
    assert rep.trials == rep.agreements == 0
    assert json.loads(rep.dumps())["disagreements"] == []


def test_corpus_needs_the_solver_and_positive_bounds():
    with pytest.raises(ValueError):
        corpus_compare(CorpusSpec(), 1)
    with pytest.raises(ValueError):
        CorpusSpec(max_degree=0)


def test_valuation_corpus_agrees():
    rep = corpus_compare(CorpusSpec(ring="Val(rank=2, base=Q)", max_degree=3, seed=1), 15, _solve)
    assert rep.agreements == 15, rep.text()


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(0, 4), min_size=1, max_size=5), min_size=1, max_size=3))
def test_oracle_is_invariant_under_generator_order_and_scaling(gens):
    polys = [fpoly(g) for g in gens]
    base = gcd_factor_oracle(polys, F5)
    assert gcd_factor_oracle(list(reversed(polys)), F5) == base
    assert gcd_factor_oracle([p.scale(2) for p in polys] + polys, F5) == base
    primes, _ = min_primes_univ(F5, polys, var="x")
    assert univariate_engine_set(primes) == base
