"""Finite-rank valuation domains modeled inside k(t1, ..., tn).

V_n is the valuation ring of the lex monomial valuation: v of a polynomial is
the lexicographically smallest exponent vector in its support, and v(f/g) =
v(f) - v(g).  The value group is Z^n and Spec V_n is the chain
P_0 = (0) < P_1 < ... < P_n, with a in P_j iff the first j coordinates of
v(a) are not all zero.

Every ring derived from V_n by localizing and dividing is V_(P_i) / (a) for
some i and some element ``a`` of minimal value, so a single class covers them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from sympy.polys.fields import field as sympy_field

from ..errors import (DegenerateLocalizationError, NoPrimeError, NotAMemberError,
                      RingError, ZeroElementError)
from ..fields import (RATIONALS, Field, PrimeFieldGF, RationalFunctionField,
                      qq_to_fraction, sympy_domain)
from .base import BasePrime, Ring, ZeroRing
from .values import ValueVector


def _min_monom(p) -> tuple[int, ...]:
    return min(p.itermonoms())


def first_nonzero(v: ValueVector) -> int:
    """1-based index of the first nonzero coordinate; n + 1 for the zero vector.

    For an element of V this is the smallest j with a in P_j.
    """
    assert v.coords is not None
    for idx, c in enumerate(v.coords):
        if c:
            return idx + 1
    return len(v.coords) + 1


class ValuationRing(Ring):
    """V_(P_i) / (a) inside k(t1..tn); ``loc = n`` and ``a = None`` is V_n itself."""

    def __init__(self, rank: int, char: int = 0, *, loc: int | None = None,
                 generator=None, root: "ValuationRing | None" = None,
                 inverted: tuple = (), modulus: tuple = (), name: str | None = None,
                 depth: int = 0) -> None:
        if not isinstance(rank, int) or rank < 1:
            raise RingError(f"valuation rank must be a positive integer, got {rank}")
        self.rank = rank
        self.char = char
        self.loc = rank if loc is None else loc
        self.generator = generator
        self.inverted = tuple(inverted)
        self.modulus = tuple(modulus)
        self.depth = depth
        if root is None:
            self.names = tuple(f"t{i}" for i in range(1, rank + 1))
            self.K, *self.gens = sympy_field(",".join(self.names), sympy_domain(char))
            self._residue_fields: dict[int, Field] = {}
            self.root = self
            base = "Q" if char == 0 else f"Fp({char})"
            self.name = name or f"Val(rank={rank}, base={base})"
        else:
            self.names, self.K, self.gens = root.names, root.K, root.gens
            self._residue_fields = root._residue_fields
            self.root = root
            self.name = name or root.name

    def __eq__(self, other) -> bool:
        if not isinstance(other, ValuationRing):
            return False
        if (other.rank, other.char, other.loc) != (self.rank, self.char, self.loc):
            return False
        if self.generator is None or other.generator is None:
            return self.generator is None and other.generator is None
        return (self.value(self.generator).prefix(self.loc)
                == self.value(other.generator).prefix(self.loc))

    def __hash__(self) -> int:
        return hash(("Val", self.rank, self.char, self.loc))

    # -- valuation -------------------------------------------------------
    def value(self, a) -> ValueVector:
        """v(a) for any nonzero element of k(t); Infinity for zero."""
        if not a.numer:
            return ValueVector.infinity()
        n, d = _min_monom(a.numer), _min_monom(a.denom)
        return ValueVector(tuple(x - y for x, y in zip(n, d)))

    def _in_loc(self, v: ValueVector) -> bool:
        return v.is_infinite or v.coords[:self.loc] >= (0,) * self.loc

    def variable(self, i: int):
        return self.gens[i - 1]

    # -- arithmetic ------------------------------------------------------
    @property
    def zero(self):
        return self.K.zero

    @property
    def one(self):
        return self.K.one

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, n: int):
        return self.K(n)

    def scalar(self, c):
        """Embed a scalar of the residue base (Fraction or int)."""
        if self.char == 0:
            c = Fraction(c)
            return self.K(self.K.domain(c.numerator, c.denominator))
        return self.K(int(c) % self.char)

    def convert(self, a):
        if isinstance(a, (int, Fraction)):
            return self.scalar(a)
        if hasattr(a, "numer") and a.field == self.K:
            if not self._in_loc(self.value(a)):
                raise NotAMemberError(f"{self.render(a)} does not lie in {self.name}")
            return a
        if hasattr(a, "numer"):
            raise RingError(f"cannot convert {a} into {self.name}")
        return self.K(a)

    def is_zero(self, a) -> bool:
        if not a.numer:
            return True
        if self.generator is None:
            return False
        diff = self.value(a) - self.value(self.generator)
        return diff.coords[:self.loc] >= (0,) * self.loc

    def unit_inverse(self, a):
        if not a.numer:
            return None
        v = self.value(a)
        if v.coords[:self.loc] != (0,) * self.loc:
            return None
        return 1 / a

    def key(self, a):
        if self.is_zero(a):
            return ("0",)
        return ("V", self.residue_key(a))

    def residue_key(self, a):
        num, den = a.numer, a.denom
        lc = den.LC
        num, den = num.quo_ground(lc), den.quo_ground(lc)
        return (tuple(sorted((m, str(c)) for m, c in num.terms())),
                tuple(sorted((m, str(c)) for m, c in den.terms())))

    def render(self, a) -> str:
        from ..fields import render_sympy_poly
        if a.denom.is_ground:
            return render_sympy_poly(a.numer.quo_ground(a.denom.LC), self.names, self.char)
        num = render_sympy_poly(a.numer, self.names, self.char)
        den = render_sympy_poly(a.denom, self.names, self.char)
        return f"({num})/({den})"

    def content_normalize(self, coeffs: list) -> list:
        live = [c for c in coeffs if c.numer]
        if not live:
            return coeffs
        pivot = min(live, key=self.value)
        out = [c / pivot for c in coeffs]
        top = next(c for c in reversed(out) if c.numer)
        if self.char == 0 and (top.numer.LC < 0) != (top.denom.LC < 0):
            out = [-c for c in out]
        return out

    # -- primes ----------------------------------------------------------
    def chain_index(self, a) -> int:
        """Smallest j with a in P_j (rank + 1 for units)."""
        return first_nonzero(self.value(a))

    def zero_prime(self) -> BasePrime:
        return BasePrime(self.root, "chain", 0)

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        live = [g for g in gens if not self.is_zero(g)]
        if self.generator is not None:
            live.append(self.generator)
        if not live:
            return [BasePrime(self.root, "chain", 0)]
        b = min(live, key=self.value)
        j = self.chain_index(b)
        if j > self.loc:
            return []
        return [BasePrime(self.root, "chain", j)]

    def prime_residue_field(self, q: BasePrime) -> Field:
        j = q.value
        if j not in self._residue_fields:
            if j == self.rank:
                K = RATIONALS if self.char == 0 else PrimeFieldGF(self.char)
            else:
                K = RationalFunctionField(self.char, self.names[j:])
            self._residue_fields[j] = K
        return self._residue_fields[j]

    def residue(self, q, a):
        j = q.value
        K = self.prime_residue_field(q)
        if not a.numer:
            return K.zero
        num, den = a.numer, a.denom
        vn, vd = _min_monom(num)[:j], _min_monom(den)[:j]
        if vn > vd:
            return K.zero
        if vn < vd:
            raise RingError(f"{self.render(a)} does not lie in the localization at P{j}")
        nterms = {m[j:]: c for m, c in num.terms() if m[:j] == vn}
        dterms = {m[j:]: c for m, c in den.terms() if m[:j] == vd}
        if j == self.rank:
            (cn,), (cd,) = nterms.values(), dterms.values()
            out = cn / cd
            return qq_to_fraction(out) if self.char == 0 else int(out) % self.char
        return K.K(K.ring.from_dict(nterms)) / K.K(K.ring.from_dict(dterms))

    def prime_lift(self, q, kappa):
        j = q.value
        if j == self.rank:
            return self.scalar(kappa), self.one
        pad = (0,) * j

        def up(p):
            return self.K(self.K.ring.from_dict({pad + m: c for m, c in p.terms()}))

        return up(kappa.numer), up(kappa.denom)

    def prime_le(self, q1, q2) -> bool:
        return q1.value <= q2.value

    # -- derived rings ---------------------------------------------------
    def localize(self, c) -> Ring:
        c = self.convert(c)
        if self.is_zero(c):
            raise DegenerateLocalizationError(f"localizing {self.name} at zero")
        new_loc = min(self.loc, self.chain_index(c) - 1)
        name = f"Localized({self.name}, {self.render(c)})"
        if self.generator is not None and self.chain_index(self.generator) > new_loc:
            return ZeroRing(self, f"{self.render(c)} is nilpotent")
        if new_loc == self.loc:
            return self
        return ValuationRing(self.rank, self.char, loc=new_loc, generator=self.generator,
                             root=self.root, inverted=self.inverted + (c,),
                             modulus=self.modulus, name=name, depth=self.depth + 1)

    def quotient(self, gens: Sequence) -> Ring:
        gens = [self.convert(g) for g in gens]
        live = [g for g in gens if not self.is_zero(g)]
        shown = ", ".join(self.render(g) for g in gens)
        name = f"Quotient({self.name}, [{shown}])"
        if not live:
            return self
        cands = live + ([self.generator] if self.generator is not None else [])
        b = min(cands, key=self.value)
        if self.chain_index(b) > self.loc:
            return ZeroRing(self, "unit ideal")
        return ValuationRing(self.rank, self.char, loc=self.loc, generator=b,
                             root=self.root, inverted=self.inverted,
                             modulus=self.modulus + tuple(gens), name=name,
                             depth=self.depth + 1)


def value_of(V: ValuationRing, a) -> ValueVector:
    """v(a), raising when the fraction is not an element of V."""
    if not hasattr(a, "numer"):
        a = V.convert(a)
    v = V.value(a)
    if not v.is_infinite and v < ValueVector.zero(V.rank):
        raise NotAMemberError(f"{V.render(a)} has value {v} < 0 and is not in {V.name}")
    return v


def smallest_prime_containing(V: ValuationRing, a) -> BasePrime:
    """The chain prime P_j with j minimal such that a in P_j, i.e. sqrt(a)."""
    v = value_of(V, a)
    if v.is_infinite:
        raise ZeroElementError("the zero element needs special handling: sqrt(0) = P_0")
    j = first_nonzero(v)
    if j > V.rank:
        raise NoPrimeError(f"{V.render(a)} is a unit and lies in no prime")
    return BasePrime(V.root, "chain", j)

