"""Ring descriptors and ideal expressions.

Grammar (whitespace-insensitive)::

    ring    := "Q" | "Z" | "Fp(" INT ")" | "Zmod(" INT ")"
             | "Val(rank=" INT ", base=" ("Q" | "Fp(" INT ")") ")"
    ideal   := expr (";" expr)* | "preset:" NAME "(" INT "," INT ")"
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := INT | IDENT | "(" expr ")"

Identifiers are polynomial variables (``x``, ``x1``.., or anything passed in
``variables``), valuation generators ``t1..tr`` and aliases ``a0..a(r-1)``.
Division is only by nonzero constants.  Parsed polynomials are sparse dicts
``{exponent tuple: root coefficient}`` as taken by the multivariate engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .constructions import glued_algebra, op_family
from .errors import FGFCError, ParseError, RankExhaustedError, RingError
from .poly import Poly, PolynomialRing, nest, tower, unnest
from .rings.base import Ring
from .rings.integers import INTEGERS, IntegersMod, PrimeField, RationalField
from .rings.valuation import ValuationRing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^();,=:]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if not rest.strip():
                out.append(Token("end", "", len(text)))
                return out
            bad = pos + (len(rest) - len(rest.lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad,
                             ("integer", "identifier", "operator"))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()


class _Cursor:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def error(self, message: str, expected: Sequence[str]) -> ParseError:
        t = self.tok
        got = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"{message}, got {got}", self.text, t.pos, tuple(expected))

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error("syntax error", (repr(text),))
        return self.advance()

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error("syntax error", ("integer",))
        return int(self.advance().text)

    def keyword(self, *words: str) -> str:
        if self.tok.kind != "ident" or self.tok.text not in words:
            raise self.error("syntax error", words)
        return self.advance().text

    def done(self) -> None:
        if self.tok.kind != "end":
            raise self.error("trailing input", ("end of input",))


# ---------------------------------------------------------------------------
# rings

def parse_ring(text: str) -> Ring:
    """Ring descriptor to a ring object."""
    cur = _Cursor(text)
    R = _ring(cur)
    cur.done()
    return R


def _prime_field(cur: _Cursor) -> PrimeField:
    cur.expect("(")
    t = cur.tok
    p = cur.integer()
    cur.expect(")")
    try:
        return PrimeField(p)
    except RingError as exc:
        raise ParseError(f"Fp({p}): {p} is not prime", cur.text, t.pos, ("prime",)) from exc


def _ring(cur: _Cursor) -> Ring:
    word = cur.keyword("Q", "Z", "Fp", "Zmod", "Val")
    if word == "Q":
        return RationalField()
    if word == "Z":
        return INTEGERS
    if word == "Fp":
        return _prime_field(cur)
    if word == "Zmod":
        cur.expect("(")
        t = cur.tok
        n = cur.integer()
        cur.expect(")")
        if n < 2:
            raise ParseError(f"Zmod({n}): modulus must be at least 2", cur.text, t.pos, ("integer >= 2",))
        return IntegersMod(n)
    cur.expect("(")
    cur.keyword("rank")
    cur.expect("=")
    t = cur.tok
    rank = cur.integer()
    if rank < 1:
        raise ParseError("rank must be at least 1", cur.text, t.pos, ("integer >= 1",))
    cur.expect(",")
    cur.keyword("base")
    cur.expect("=")
    base = cur.keyword("Q", "Fp")
    char = 0 if base == "Q" else _prime_field(cur).p
    cur.expect(")")
    return ValuationRing(rank, char)


# ---------------------------------------------------------------------------
# expressions

class _Coeffs:
    """Scalar arithmetic while parsing: Fractions, or elements of Frac(V)."""

    def __init__(self, R: Ring) -> None:
        self.R = R
        self.V = R.root if isinstance(R.root, ValuationRing) else None

    def lit(self, n):
        return self.V.scalar(n) if self.V is not None else Fraction(n)

    def is_zero(self, c) -> bool:
        return (not c.numer) if self.V is not None else c == 0


Sparse = dict  # {exponent tuple: coefficient}


def _sp_add(C: _Coeffs, a: Sparse, b: Sparse, sign: int = 1) -> Sparse:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, C.lit(0)) + (c if sign > 0 else -c)
        if C.is_zero(v):
            out.pop(m, None)
        else:
            out[m] = v
    return out


def _sp_mul(C: _Coeffs, a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, C.lit(0)) + c1 * c2
            if C.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
    return out


class _ExprParser:
    def __init__(self, cur: _Cursor, R: Ring, variables: Sequence[str]) -> None:
        self.cur = cur
        self.R = R
        self.C = _Coeffs(R)
        self.vars = tuple(variables)
        self.n = len(self.vars)

    def const(self, c) -> Sparse:
        return {} if self.C.is_zero(c) else {(0,) * self.n: c}

    def expr(self) -> Sparse:
        out = self.term()
        while self.cur.at("+") or self.cur.at("-"):
            sign = 1 if self.cur.advance().text == "+" else -1
            out = _sp_add(self.C, out, self.term(), sign)
        return out

    def term(self) -> Sparse:
        out = self.unary()
        while self.cur.at("*") or self.cur.at("/"):
            op = self.cur.advance()
            rhs = self.unary()
            if op.text == "*":
                out = _sp_mul(self.C, out, rhs)
                continue
            zero = (0,) * self.n
            if not rhs or set(rhs) != {zero}:
                raise ParseError("division is only by a nonzero constant", self.cur.text,
                                 op.pos, ("constant divisor",))
            d = rhs[zero]
            out = {m: c / d for m, c in out.items()}
        return out

    def unary(self) -> Sparse:
        if self.cur.at("-"):
            self.cur.advance()
            return {m: -c for m, c in self.unary().items()}
        if self.cur.at("+"):
            self.cur.advance()
            return self.unary()
        return self.power()

    def power(self) -> Sparse:
        base = self.atom()
        if self.cur.at("^"):
            self.cur.advance()
            e = self.cur.integer()
            out = self.const(self.C.lit(1))
            for _ in range(e):
                out = _sp_mul(self.C, out, base)
            return out
        return base

    def atom(self) -> Sparse:
        t = self.cur.tok
        if t.kind == "int":
            self.cur.advance()
            return self.const(self.C.lit(int(t.text)))
        if self.cur.at("("):
            self.cur.advance()
            out = self.expr()
            self.cur.expect(")")
            return out
        if t.kind == "ident":
            self.cur.advance()
            return self.ident(t)
        raise self.cur.error("syntax error", ("integer", "identifier", "'('", "'-'"))

    def ident(self, t: Token) -> Sparse:
        name = t.text
        if name in self.vars:
            mono = tuple(1 if v == name else 0 for v in self.vars)
            return {mono: self.C.lit(1)}
        V = self.C.V
        m = re.fullmatch(r"([ta])(\d+)", name)
        if m and V is not None:
            kind, idx = m.group(1), int(m.group(2))
            i = idx - 1 if kind == "t" else idx
            if 0 <= i < V.rank:
                return self.const(V.gens[i])
            if i >= V.rank:
                raise RankExhaustedError(f"{name} needs rank at least {i + 1}, have {V.rank}")
        raise ParseError(f"unknown variable {name!r}", self.cur.text, t.pos,
                         tuple(self.vars) + (_scalar_names(V),))


def _scalar_names(V) -> str:
    if V is None:
        return "a constant"
    return f"t1..t{V.rank} or a0..a{V.rank - 1}"


def infer_variables(text: str) -> tuple[str, ...]:
    """``x`` and ``x1, x2, ..`` found in the text, in index order."""
    names = set(re.findall(r"\b(x\d*)\b", text))
    return tuple(sorted(names, key=lambda n: (len(n), int(n[1:]) if n[1:] else 0)))


def parse_polys(text: str, R: Ring, variables: Sequence[str]) -> list[Sparse]:
    """Semicolon-separated expressions to sparse generators with root coefficients."""
    cur = _Cursor(text)
    p = _ExprParser(cur, R, variables)
    out = []
    while True:
        start = cur.tok.pos
        raw = p.expr()
        out.append(_to_root(raw, R, text, start))
        if cur.at(";"):
            cur.advance()
            continue
        break
    cur.done()
    return out


def _to_root(raw: Sparse, R: Ring, text: str, pos: int) -> Sparse:
    out = {}
    for m, c in raw.items():
        try:
            v = R.convert(c)
        except FGFCError as exc:
            raise ParseError(f"coefficient not in {R.name}: {exc}", text, pos, ()) from exc
        if not R.is_zero(v):
            out[m] = v
    return out


def parse_poly(text: str, R: Ring, variables: Sequence[str]) -> Sparse:
    polys = parse_polys(text, R, variables)
    if len(polys) != 1:
        raise ParseError("expected a single polynomial", text, 0, ())
    return polys[0]


def render_sparse(terms: Sparse, R: Ring, variables: Sequence[str]) -> str:
    """Canonical text of a sparse polynomial (nested, last variable outermost)."""
    rings = tower(R, variables)
    p = nest(terms, tuple(variables), rings)
    if isinstance(p, Poly):
        return p.render()
    return R.root.render(p)


def sparse_key(terms: Sparse, R: Ring) -> tuple:
    root = R.root
    return tuple(sorted((m, repr(root.key(c))) for m, c in terms.items() if not root.is_zero(c)))


# ---------------------------------------------------------------------------
# problems

PRESETS = ("opex", "glued")


@dataclass
class Problem:
    """A parsed ring, variable list and ideal, plus presentation options."""

    ring: Ring
    variables: tuple[str, ...]
    ideal: list[Sparse]
    text: list[str] = field(default_factory=list)
    preset: tuple[str, int, int] | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for t in self.ideal:
            for m in t:
                if len(m) != len(self.variables):
                    raise ValueError("monomial length does not match the variable list")


def parse_preset(text: str) -> tuple[str, int, int]:
    cur = _Cursor(text)
    cur.keyword("preset")
    cur.expect(":")
    name = cur.keyword(*PRESETS)
    cur.expect("(")
    rank = cur.integer()
    cur.expect(",")
    k = cur.integer()
    cur.expect(")")
    cur.done()
    return name, rank, k


def preset_ring(ring_spec: str | None, rank: int, text: str) -> ValuationRing:
    if ring_spec is None:
        return ValuationRing(rank)
    R = parse_ring(ring_spec)
    if not isinstance(R, ValuationRing):
        raise ParseError("presets need a Val(...) ring", ring_spec, 0, ("Val(rank=r, base=...)",))
    if R.rank != rank:
        raise ParseError(f"preset rank {rank} differs from the ring rank {R.rank}", text, 0, ())
    return R


def preset_problem(name: str, V: ValuationRing, k: int) -> tuple[tuple[str, ...], list[Sparse]]:
    """Variables and sparse generators of a preset over V."""
    fam = op_family(V, k, "x")
    if name == "opex":
        return ("x",), [unnest(f, 1) for f in fam]
    T = PolynomialRing(V, "x")
    gens = glued_algebra(T, fam, "y")
    return ("x", "y"), [unnest(g, 2) for g in gens]


def parse_problem(ring_spec: str | None, ideal_spec: str, variables: Sequence[str] | None = None,
                  **options: Any) -> Problem:
    """Parse a ring descriptor and an ideal (expressions or a preset)."""
    if ideal_spec.strip().startswith("preset"):
        name, rank, k = parse_preset(ideal_spec)
        V = preset_ring(ring_spec, rank, ideal_spec)
        vs, ideal = preset_problem(name, V, k)
        text = [render_sparse(t, V, vs) for t in ideal]
        return Problem(V, vs, ideal, text, (name, rank, k), dict(options))
    R = parse_ring(ring_spec or "Q")
    vs = tuple(variables) if variables else infer_variables(ideal_spec)
    if len(set(vs)) != len(vs):
        raise ParseError("duplicate variable", ",".join(vs), 0, ())
    ideal = parse_polys(ideal_spec, R, vs)
    return Problem(R, vs, ideal, [render_sparse(t, R, vs) for t in ideal], None, dict(options))
