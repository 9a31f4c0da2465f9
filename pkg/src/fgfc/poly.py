"""Dense univariate polynomials over any ring, and polynomial rings as rings.

Multivariate polynomials are nested: a polynomial in ``x2`` whose coefficients
are polynomials in ``x1``.  A :class:`PolynomialRing` over a root ring is itself
a root ring, so the engine can treat ``R[x1]`` as the base of ``R[x1][x2]``;
its localizations and quotients are :class:`PolyLocalQuotient` rings whose
elements are ``(numerator, denominator)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import (DegenerateLocalizationError, NotMonicError, RingError,
                     ZeroPolynomialError)
from .fields import pdivmod, pgcd, ptrim
from .rings.base import Ring, ZeroRing

NEG_INF = float("-inf")


@dataclass(frozen=True, eq=False)
class Poly:
    """A polynomial in ``var`` with coefficients in ``ring``, lowest degree first."""

    ring: Ring
    var: str
    coeffs: tuple = ()

    @classmethod
    def make(cls, ring: Ring, var: str, coeffs: Iterable) -> "Poly":
        cs = list(coeffs)
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        return cls(ring, var, tuple(cs))

    @classmethod
    def constant(cls, ring: Ring, var: str, c) -> "Poly":
        return cls.make(ring, var, [c])

    @classmethod
    def monomial(cls, ring: Ring, var: str, c, e: int) -> "Poly":
        return cls.make(ring, var, [ring.zero] * e + [c])

    # -- shape -----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def deg(self) -> int:
        """Degree as an int, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.ring.is_one(self.coeffs[-1])

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    # -- arithmetic ------------------------------------------------------
    def _like(self, coeffs) -> "Poly":
        return Poly.make(self.ring, self.var, coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return self._like(R.add(self.coeff(i), other.coeff(i)) for i in range(n))

    def __sub__(self, other: "Poly") -> "Poly":
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return self._like(R.sub(self.coeff(i), other.coeff(i)) for i in range(n))

    def __neg__(self) -> "Poly":
        return self._like(self.ring.neg(c) for c in self.coeffs)

    def __mul__(self, other: "Poly") -> "Poly":
        R = self.ring
        if self.is_zero or other.is_zero:
            return self._like([])
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return self._like(out)

    def __pow__(self, e: int) -> "Poly":
        out = Poly.constant(self.ring, self.var, self.ring.one)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        return self._like(self.ring.mul(c, a) for a in self.coeffs)

    def shift(self, k: int) -> "Poly":
        return self._like([self.ring.zero] * k + list(self.coeffs))

    def change_ring(self, ring: Ring) -> "Poly":
        return Poly.make(ring, self.var, [ring.convert(c) for c in self.coeffs])

    def without_top(self) -> "Poly":
        """f - lc(f) * var^deg(f)."""
        return self._like(self.coeffs[:-1])

    # -- identity --------------------------------------------------------
    def key(self) -> tuple:
        return (self.var, tuple(self.ring.key(c) for c in self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def render(self) -> str:
        return render_terms(self.ring, self.var, self.coeffs)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def _compound(text: str) -> bool:
    body = text[1:] if text.startswith("-") else text
    return " + " in body or " - " in body or ")/(" in body or body.startswith("(")


def render_terms(ring: Ring, var: str, coeffs: Sequence) -> str:
    """Canonical text: descending powers, coefficient 1 omitted, ``^`` for powers."""
    parts: list[tuple[str, str]] = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if ring.is_zero(c):
            continue
        cs = ring.render(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if _compound(cs):
            sign, body = "+", f"({cs})"
        elif cs.startswith("-"):
            sign, body = "-", cs[1:]
        else:
            sign, body = "+", cs
        if mono:
            body = mono if body == "1" else f"{body}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# degree data and monic division

def leading_data(f: Poly) -> tuple[int, Any]:
    if f.is_zero:
        raise ZeroPolynomialError("leading data of the zero polynomial")
    return f.deg, f.lc


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of ``f`` by a monic ``g`` of positive degree."""
    if g.is_zero or not g.is_monic():
        raise NotMonicError(f"{g.render()} is not monic; localize at its leading coefficient first")
    if g.deg < 1:
        raise NotMonicError("division needs a divisor of positive degree")
    R = f.ring
    r = list(f.coeffs)
    dg = g.deg
    q = [R.zero] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg:
        top = r[-1]
        k = len(r) - 1 - dg
        if not R.is_zero(top):
            q[k] = top
            for i, b in enumerate(g.coeffs):
                r[k + i] = R.sub(r[k + i], R.mul(top, b))
        r.pop()
    return Poly.make(R, f.var, q), Poly.make(R, f.var, r)


def reduce_by_monic(f: Poly, g: Poly) -> Poly:
    return poly_divmod(f, g)[1]


def make_monic(f: Poly) -> Poly | None:
    """f divided by its leading coefficient when that is a recognisable unit."""
    if f.is_monic():
        return f
    inv = f.ring.unit_inverse(f.lc)
    if inv is None:
        return None
    g = f.scale(inv)
    return Poly.make(f.ring, f.var, list(g.coeffs[:-1]) + [f.ring.one])


def normalize(gens: Sequence[Poly]) -> list[Poly]:
    """Drop zeros, make unit-led generators monic, reduce by monic generators.

    Reductions only ever lower a degree, so the loop terminates and the degree
    sum never increases.  A monic constant (the unit ideal) absorbs everything.
    """
    gs = [g for g in gens if not g.is_zero]
    while True:
        gs = [make_monic(g) or g for g in gs]
        for g in gs:
            if g.deg == 0 and g.is_monic():
                return [g]
        changed = False
        monics = sorted((i for i, g in enumerate(gs) if g.is_monic()), key=lambda i: (gs[i].deg, i))
        for i in monics:
            m = gs[i]
            for j, g in enumerate(gs):
                if j != i and g.deg >= m.deg:
                    gs[j] = reduce_by_monic(g, m)
                    changed = True
            if changed:
                break
        gs = [g for g in gs if not g.is_zero]
        if not changed:
            return gs


def measure(gens: Sequence[Poly]) -> int:
    return sum(g.deg for g in gens if not g.is_zero)


@dataclass(frozen=True)
class GenList:
    """A finite generating list of an ideal of ``ring[var]``."""

    ring: Ring
    var: str
    gens: tuple = ()

    @classmethod
    def of(cls, ring: Ring, var: str, gens: Iterable[Poly]) -> "GenList":
        return cls(ring, var, tuple(g.change_ring(ring) if g.ring is not ring else g for g in gens))

    def normalized(self) -> "GenList":
        return GenList(self.ring, self.var, tuple(normalize(self.gens)))

    def render(self) -> list[str]:
        return [g.render() for g in self.gens]


def d_measure(G: GenList | Sequence[Poly]) -> int:
    gens = G.gens if isinstance(G, GenList) else G
    return measure(normalize(gens))


# ---------------------------------------------------------------------------
# polynomial rings

class PolynomialRing(Ring):
    """``base[var]`` for a root ring ``base``; a root ring in its own right."""

    def __init__(self, base: Ring, var: str) -> None:
        if base.root is not base:
            raise RingError("polynomial rings are built over root rings; divide afterwards")
        self.base = base
        self.var = var
        self.root = self
        self.name = f"{base.name}[{var}]"
        self._zero = Poly(base, var, ())
        self._one = Poly.constant(base, var, base.one)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialRing) and other.var == self.var and other.base == self.base

    def __hash__(self) -> int:
        return hash(("Poly", self.var, hash(self.base)))

    @property
    def variables(self) -> tuple[str, ...]:
        inner = self.base.variables if isinstance(self.base, PolynomialRing) else ()
        return inner + (self.var,)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, n: int):
        return Poly.constant(self.base, self.var, self.base.from_int(n))

    def gen(self) -> Poly:
        return Poly.monomial(self.base, self.var, self.base.one, 1)

    def convert(self, a):
        if isinstance(a, Poly):
            if a.var != self.var:
                return Poly.constant(self.base, self.var, self.base.convert(a))
            return a if a.ring is self.base else a.change_ring(self.base)
        if isinstance(a, tuple):
            num, den = a
            if den != self.one:
                raise RingError(f"{self.render(num)}/{self.render(den)} is not in {self.name}")
            return num
        return Poly.constant(self.base, self.var, self.base.convert(a))

    def is_zero(self, a) -> bool:
        return a.is_zero

    def unit_inverse(self, a):
        if a.deg != 0:
            return None
        inv = self.base.unit_inverse(a.coeffs[0])
        return None if inv is None else Poly.constant(self.base, self.var, inv)

    def key(self, a):
        return a.key()

    def render(self, a) -> str:
        return a.render()

    def content_normalize(self, coeffs: list) -> list:
        """Divide by the gcd over Frac(base)[var], then by the base content."""
        live = [c for c in coeffs if not c.is_zero]
        if not live:
            return coeffs
        q0 = self.base.zero_prime()
        K = q0.residue_field()
        B = self.base
        images = [ptrim(K, [B.residue(q0, a) for a in c.coeffs]) for c in coeffs]
        g: list = []
        for im in images:
            if im:
                g = pgcd(K, g, im) if g else im
        reduced = [pdivmod(K, im, g)[0] if im else [] for im in images]
        # back to base over a common denominator, then strip the base content
        pairs = [q0.lift(k) for im in reduced for k in im]
        flat = []
        for i, (n, _) in enumerate(pairs):
            term = n
            for j, (_, d) in enumerate(pairs):
                if j != i and not B.is_one(d):
                    term = B.mul(term, d)
            flat.append(term)
        flat = B.content_normalize(flat)
        out, pos = [], 0
        for im in reduced:
            out.append(Poly.make(B, self.var, flat[pos:pos + len(im)]))
            pos += len(im)
        return out

    # -- primes ----------------------------------------------------------
    def zero_prime(self):
        from .primes import PrimeRep
        return PrimeRep(self.base.zero_prime(), None, self.var, self)

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        from .engine import EngineContext, min_primes_univ_cached
        if ctx is None:
            ctx = EngineContext()
        gens = [self.convert(g) for g in gens]
        return min_primes_univ_cached(self, gens, ctx)

    def residue(self, q, a):
        return q.residue(self.convert(a))

    def contains(self, q, a) -> bool:
        return q.contains(self.convert(a))

    def localize(self, c) -> Ring:
        return PolyLocalQuotient(self, (), ()).localize(c)

    def quotient(self, gens: Sequence) -> Ring:
        return PolyLocalQuotient(self, (), ()).quotient(gens)


class PolyLocalQuotient(Ring):
    """``T_s / J`` for a polynomial root ring ``T``; elements are (num, den) pairs.

    Zero tests are syntactic (numerator is the zero polynomial).  The engine
    never relies on them for correctness: a hidden zero only costs extra
    branches, each of which ends in an empty set of primes.
    """

    def __init__(self, T: PolynomialRing, inverted: tuple, modulus: tuple,
                 name: str | None = None, depth: int = 0) -> None:
        self.T = T
        self.root = T
        self.inverted = tuple(inverted)
        self.modulus = tuple(modulus)
        self.depth = depth
        self._inverted_keys = {T.key(c) for c in self.inverted}
        self.name = name or T.name

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyLocalQuotient) and other.T == self.T
                and other._inverted_keys == self._inverted_keys
                and {self.T.key(m) for m in other.modulus} == {self.T.key(m) for m in self.modulus})

    def __hash__(self) -> int:
        return hash(("PLQ", hash(self.T), len(self.inverted), len(self.modulus)))

    @property
    def zero(self):
        return (self.T.zero, self.T.one)

    @property
    def one(self):
        return (self.T.one, self.T.one)

    def _simplify(self, num: Poly, den: Poly):
        if num.is_zero:
            return (num, self.T.one)
        if num == den:
            return self.one
        inv = self.T.unit_inverse(den)
        if inv is not None:
            return (num * inv, self.T.one)
        return (num, den)

    def add(self, a, b):
        (n1, d1), (n2, d2) = a, b
        if d1 == d2:
            return self._simplify(n1 + n2, d1)
        return self._simplify(n1 * d2 + n2 * d1, d1 * d2)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (-a[0], a[1])

    def mul(self, a, b):
        (n1, d1), (n2, d2) = a, b
        if n1 == d2:
            return self._simplify(n2, d1)
        if n2 == d1:
            return self._simplify(n1, d2)
        return self._simplify(n1 * n2, d1 * d2)

    def from_int(self, n: int):
        return (self.T.from_int(n), self.T.one)

    def convert(self, a):
        if isinstance(a, tuple):
            return a
        return (self.T.convert(a), self.T.one)

    def is_zero(self, a) -> bool:
        return a[0].is_zero

    def is_one(self, a) -> bool:
        return a[0] == a[1]

    def unit_inverse(self, a):
        num, den = a
        if num.is_zero:
            return None
        if self.T.key(num) in self._inverted_keys:
            return (den, num)
        inv = self.T.unit_inverse(num)
        if inv is not None:
            return (den * inv, self.T.one)
        return None

    def key(self, a):
        return (self.T.key(a[0]), self.T.key(a[1]))

    def render(self, a) -> str:
        num, den = a
        if den == self.T.one:
            return num.render()
        return f"({num.render()})/({den.render()})"

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        nums = [self.convert(g)[0] for g in gens]
        cands = self.T.min_primes(list(self.modulus) + nums, ctx)
        return [q for q in cands if not any(q.contains(s) for s in self.inverted)]

    def residue(self, q, a):
        num, den = self.convert(a)
        K = q.residue_field()
        return K.div(q.residue(num), q.residue(den))

    def contains(self, q, a) -> bool:
        return q.contains(self.convert(a)[0])

    def localize(self, c) -> Ring:
        num = self.convert(c)[0]
        if num.is_zero:
            raise DegenerateLocalizationError(f"localizing {self.name} at zero")
        if self.T.unit_inverse(num) is not None or self.T.key(num) in self._inverted_keys:
            return self
        return PolyLocalQuotient(self.T, self.inverted + (num,), self.modulus,
                                 name=f"Localized({self.name}, {num.render()})",
                                 depth=self.depth + 1)

    def quotient(self, gens: Sequence) -> Ring:
        nums = [self.convert(g)[0] for g in gens]
        nums = [n for n in nums if not n.is_zero]
        if not nums:
            return self
        for n in nums:
            if self.T.unit_inverse(n) is not None or self.T.key(n) in self._inverted_keys:
                return ZeroRing(self, "unit ideal")
        shown = ", ".join(n.render() for n in nums)
        return PolyLocalQuotient(self.T, self.inverted, self.modulus + tuple(nums),
                                 name=f"Quotient({self.name}, [{shown}])",
                                 depth=self.depth + 1)


# ---------------------------------------------------------------------------
# sparse <-> nested conversion

def tower(base: Ring, variables: Sequence[str]) -> list[Ring]:
    """[base.root, base.root[v1], base.root[v1][v2], ...]."""
    rings: list[Ring] = [base.root]
    for v in variables:
        rings.append(PolynomialRing(rings[-1], v))
    return rings


def nest(terms: dict, variables: Sequence[str], rings: Sequence[Ring]) -> Any:
    """Sparse ``{exponent tuple: root coefficient}`` to a nested polynomial.

    ``rings`` is the output of :func:`tower`; the result lives in
    ``rings[len(variables)]`` (a plain coefficient when there are no variables).
    """
    m = len(variables)
    R0 = rings[0]
    if m == 0:
        out = R0.zero
        for c in terms.values():
            out = R0.add(out, R0.convert(c))
        return out
    groups: dict[int, dict] = {}
    for mono, c in terms.items():
        groups.setdefault(mono[-1], {})[mono[:-1]] = c
    inner = rings[m - 1]
    top = max(groups) if groups else -1
    coeffs = [nest(groups.get(e, {}), variables[:-1], rings) if e in groups else inner.zero
              for e in range(top + 1)]
    return Poly.make(inner, variables[-1], coeffs)


def unnest(p: Any, depth: int) -> dict:
    """Inverse of :func:`nest` for a polynomial nested ``depth`` levels."""
    if depth == 0:
        return {(): p}
    out: dict = {}
    for e, c in enumerate(p.coeffs):
        if p.ring.is_zero(c):
            continue
        for mono, v in unnest(c, depth - 1).items():
            out[mono + (e,)] = v
    return out
