from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgfc.errors import ParseError, RankExhaustedError
from fgfc.parser import (infer_variables, parse_poly, parse_preset, parse_problem, parse_ring,
                         render_sparse, sparse_key)
from fgfc.rings import INTEGERS, QQ_RING, IntegersMod, PrimeField, ValuationRing


def random_sparse(R, nvars: int, rng: random.Random, coeff) -> dict:
    out = {}
    for _ in range(rng.randint(0, 4)):
        m = tuple(rng.randint(0, 3) for _ in range(nvars))
        c = R.convert(coeff(rng))
        if not R.is_zero(c):
            out[m] = c
    return out


def v2_coeff(V):
    def draw(rng):
        t1, t2 = V.gens
        c = V.scalar(rng.randint(-3, 3)) * t1 ** rng.randint(0, 2) * t2 ** rng.randint(0, 1)
        return c + V.scalar(rng.randint(-1, 1)) * t2
    return draw


CASES = [
    ("Z", INTEGERS, ("x",), lambda r: r.randint(-20, 20)),
    ("Q", QQ_RING, ("x1", "x2"), lambda r: Fraction(r.randint(-9, 9), r.randint(1, 6))),
    ("Fp(7)", PrimeField(7), ("x1", "x2", "x3"), lambda r: r.randrange(7)),
    ("Zmod(12)", IntegersMod(12), ("x",), lambda r: r.randrange(12)),
]


def test_round_trip_on_500_expressions():
    rng = random.Random(2024)
    V = ValuationRing(2)
    cases = CASES + [("Val(rank=2, base=Q)", V, ("x",), v2_coeff(V))]
    for n in range(500):
        spec, R, vs, coeff = cases[n % len(cases)]
        terms = random_sparse(R, len(vs), rng, coeff)
        text = render_sparse(terms, R, vs)
        back = parse_poly(text, parse_ring(spec), vs)
        assert sparse_key(back, R) == sparse_key(terms, R), text
        assert render_sparse(back, R, vs) == text


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                       st.integers(-30, 30), max_size=6))
def test_round_trip_property_over_z(raw):
    vs = ("x1", "x2")
    terms = {m: c for m, c in raw.items() if c}
    text = render_sparse(terms, INTEGERS, vs)
    assert sparse_key(parse_poly(text, INTEGERS, vs), INTEGERS) == sparse_key(terms, INTEGERS)


def test_whitespace_insensitive():
    a = parse_problem("Z", "x^2-1;2*x")
    b = parse_problem(" Z ", "  x ^ 2 - 1 ;\n 2 * x ")
    assert a.text == b.text == ["x^2 - 1", "2*x"]


def test_ring_grammar():
    assert parse_ring("Fp(5)").name == PrimeField(5).name
    assert parse_ring("Zmod(12)").name == IntegersMod(12).name
    V = parse_ring("Val(rank=3, base=Fp(3))")
    assert isinstance(V, ValuationRing) and V.rank == 3


@pytest.mark.parametrize("ring,ideal,line,col,expected", [
    ("Z", "x +", 1, 4, {"integer", "identifier"}),
    ("Z", "x;\n  x +* 2", 2, 6, {"integer", "identifier"}),
    ("Z", "x^x", 1, 3, {"integer"}),
    ("Z", "x x", 1, 3, {"end of input"}),
])
def test_syntax_errors_report_position_and_expected(ring, ideal, line, col, expected):
    with pytest.raises(ParseError) as info:
        parse_problem(ring, ideal)
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert expected <= set(err.expected)


def test_unknown_variable():
    with pytest.raises(ParseError) as info:
        parse_problem("Z", "x + q")
    assert "q" in str(info.value) and "x" in info.value.expected


def test_ring_errors():
    with pytest.raises(ParseError, match="not prime"):
        parse_ring("Fp(4)")
    with pytest.raises(ParseError) as info:
        parse_ring("Foo")
    assert {"Q", "Z", "Fp", "Zmod", "Val"} <= set(info.value.expected)


def test_division_and_coefficient_errors():
    assert parse_problem("Q", "x/2").text == ["1/2*x"]
    with pytest.raises(ParseError):
        parse_problem("Z", "x/2")
    with pytest.raises(ParseError):
        parse_problem("Q", "x/0")
    with pytest.raises(ParseError):
        parse_problem("Q", "1/x")


def test_valuation_aliases():
    p = parse_problem("Val(rank=2, base=Q)", "t1*x - 1; a1*x")
    assert p.text == ["t1*x - 1", "t2*x"]
    with pytest.raises(RankExhaustedError):
        parse_problem("Val(rank=2, base=Q)", "a2*x")
    with pytest.raises(RankExhaustedError):
        parse_problem("Val(rank=2, base=Q)", "t3")


def test_variables_and_presets():
    assert infer_variables("x2*x10 + x1 + x") == ("x", "x1", "x2", "x10")
    assert parse_problem("Fp(5)", "x*y + y^2", ["x", "y"]).text == ["y^2 + x*y"]
    with pytest.raises(ParseError):
        parse_problem("Z", "x", ["x", "x"])
    assert parse_preset("preset: glued(3, 2)") == ("glued", 3, 2)
    p = parse_problem(None, "preset:opex(2,2)")
    assert p.variables == ("x",) and p.preset == ("opex", 2, 2)
    assert parse_problem(None, "preset:glued(2,1)").variables == ("x", "y")
    with pytest.raises(RankExhaustedError):
        parse_problem(None, "preset:opex(2,3)")
    with pytest.raises(ParseError):
        parse_problem("Val(rank=3, base=Q)", "preset:opex(2,1)")
