"""Q, F_p, Z and the localizations/quotients of Z that the engine produces."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Any, Sequence

from sympy import factorint, isprime

from ..errors import DegenerateLocalizationError, RingError
from ..fields import RATIONALS, Field, PrimeFieldGF
from .base import BasePrime, Ring, ZeroRing


class RationalField(Ring):
    """Q, elements are :class:`fractions.Fraction`."""

    is_field = True

    def __init__(self) -> None:
        self.name = "Q"
        self.root = self

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    zero = property(lambda self: Fraction(0))
    one = property(lambda self: Fraction(1))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, n: int):
        return Fraction(n)

    def convert(self, a):
        return Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def unit_inverse(self, a):
        return None if a == 0 else 1 / Fraction(a)

    def render(self, a) -> str:
        return str(a)

    def content_normalize(self, coeffs: list) -> list:
        top = next((c for c in reversed(coeffs) if c != 0), None)
        if top is None:
            return coeffs
        return [c / top for c in coeffs]

    def zero_prime(self) -> BasePrime:
        return BasePrime(self, "zero")

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        if any(g != 0 for g in gens):
            return []
        return [BasePrime(self, "zero")]

    def prime_residue_field(self, q: BasePrime) -> Field:
        return RATIONALS

    def residue(self, q, a):
        return Fraction(a)

    def prime_lift(self, q, kappa):
        return Fraction(kappa), Fraction(1)

    def prime_le(self, q1, q2) -> bool:
        return True

    def localize(self, c) -> Ring:
        if c == 0:
            raise DegenerateLocalizationError("localizing Q at 0")
        return self

    def quotient(self, gens: Sequence) -> Ring:
        if any(g != 0 for g in gens):
            return ZeroRing(self, "unit ideal")
        return self


class PrimeField(Ring):
    """F_p, elements are ints in ``range(p)``."""

    is_field = True

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise RingError(f"Fp({p}): {p} is not prime")
        self.p = p
        self.name = f"Fp({p})"
        self.root = self
        self.field = PrimeFieldGF(p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def from_int(self, n: int):
        return n % self.p

    def convert(self, a):
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise RingError(f"{a} has no image in Fp({self.p})")
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return int(a) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def unit_inverse(self, a):
        return None if a % self.p == 0 else pow(a, -1, self.p)

    def content_normalize(self, coeffs: list) -> list:
        top = next((c for c in reversed(coeffs) if c % self.p), None)
        if top is None:
            return coeffs
        inv = pow(top, -1, self.p)
        return [c * inv % self.p for c in coeffs]

    def zero_prime(self) -> BasePrime:
        return BasePrime(self, "zero")

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        if any(g % self.p for g in gens):
            return []
        return [BasePrime(self, "zero")]

    def prime_residue_field(self, q: BasePrime) -> Field:
        return self.field

    def residue(self, q, a):
        return a % self.p

    def prime_lift(self, q, kappa):
        return kappa % self.p, 1

    def prime_le(self, q1, q2) -> bool:
        return True

    def localize(self, c) -> Ring:
        if c % self.p == 0:
            raise DegenerateLocalizationError(f"localizing Fp({self.p}) at 0")
        return self

    def quotient(self, gens: Sequence) -> Ring:
        if any(g % self.p for g in gens):
            return ZeroRing(self, "unit ideal")
        return self


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    if n <= 1:
        return []
    return sorted(factorint(n))


class _IntegerPrimes:
    """Prime bookkeeping shared by Z and its localized quotients."""

    root: "Integers"

    def zero_prime(self) -> BasePrime:
        return BasePrime(INTEGERS, "zero")

    def prime_residue_field(self, q: BasePrime) -> Field:
        if q.kind == "zero":
            return RATIONALS
        return PrimeFieldGF(q.value)

    def prime_lift(self, q, kappa):
        if q.kind == "zero":
            k = Fraction(kappa)
            return k.numerator, k.denominator
        return int(kappa) % q.value, 1

    def prime_le(self, q1, q2) -> bool:
        if q1.kind == "zero":
            return True
        return q2.kind == "principal" and q1.value == q2.value

    @staticmethod
    def _rational_residue(q: BasePrime, a):
        if q.kind == "zero":
            return Fraction(a)
        p = q.value
        a = Fraction(a)
        if a.denominator % p == 0:
            raise RingError(f"{a} does not lie in the localization at ({p})")
        return a.numerator * pow(a.denominator, -1, p) % p


class Integers(_IntegerPrimes, Ring):
    """Z with int elements."""

    def __init__(self) -> None:
        self.name = "Z"
        self.root = self

    def __eq__(self, other) -> bool:
        return type(other) is Integers

    def __hash__(self) -> int:
        return hash("Z")

    zero = property(lambda self: 0)
    one = property(lambda self: 1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, n: int):
        return n

    def convert(self, a):
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise RingError(f"{a} is not an integer")
            return a.numerator
        return int(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def unit_inverse(self, a):
        return a if a in (1, -1) else None

    def content_normalize(self, coeffs: list) -> list:
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if g == 0:
            return coeffs
        top = next(c for c in reversed(coeffs) if c)
        if top < 0:
            g = -g
        return [c // g for c in coeffs]

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        g = 0
        for a in gens:
            g = gcd(g, int(a))
        if g == 0:
            return [BasePrime(self, "zero")]
        return [BasePrime(self, "principal", p) for p in _prime_factors(g)]

    def residue(self, q, a):
        return self._rational_residue(q, a)

    def localize(self, c) -> Ring:
        return IntegersLocalQuotient((), ()).localize(c)

    def quotient(self, gens: Sequence) -> Ring:
        return IntegersLocalQuotient((), ()).quotient(gens)


INTEGERS = Integers()


class IntegersLocalQuotient(_IntegerPrimes, Ring):
    """Z_s / J.

    With ``g`` the gcd of J stripped of every prime dividing ``s``, the ring is
    Z_s when g = 0 (elements are Fractions whose denominators divide a power of s)
    and Z/g otherwise (elements are ints in ``range(g)``); g = 1 is the zero ring
    and is never instantiated.
    """

    def __init__(self, inverted: tuple[int, ...], modulus: tuple[int, ...],
                 name: str | None = None, depth: int = 0) -> None:
        self.root = INTEGERS
        self.inverted = tuple(int(c) for c in inverted)
        self.modulus = tuple(int(m) for m in modulus)
        self.depth = depth
        s_primes: set[int] = set()
        for c in self.inverted:
            s_primes.update(_prime_factors(c))
        self.s_primes = frozenset(s_primes)
        g = 0
        for m in self.modulus:
            g = gcd(g, m)
        for p in self.s_primes:
            while g and g % p == 0:
                g //= p
        self.g = g
        if name is None:
            name = "Z"
            if inverted:
                name = f"Localized(Z, {_prod(self.inverted)})"
            if modulus:
                name = f"Quotient({name}, [{', '.join(map(str, self.modulus))}])"
        self.name = name

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntegersLocalQuotient) and other.s_primes == self.s_primes
                and other.g == self.g)

    def __hash__(self) -> int:
        return hash(("Zloc", self.s_primes, self.g))

    @property
    def zero(self):
        return 0 if self.g else Fraction(0)

    @property
    def one(self):
        return 1 % self.g if self.g else Fraction(1)

    def convert(self, a):
        if self.g:
            if isinstance(a, Fraction):
                if gcd(a.denominator, self.g) != 1:
                    raise RingError(f"{a} has no image in {self.name}")
                return a.numerator * pow(a.denominator, -1, self.g) % self.g
            return int(a) % self.g
        a = Fraction(a)
        if any(p not in self.s_primes for p in _prime_factors(a.denominator)):
            raise RingError(f"{a} does not lie in {self.name}")
        return a

    def add(self, a, b):
        return (a + b) % self.g if self.g else a + b

    def sub(self, a, b):
        return (a - b) % self.g if self.g else a - b

    def mul(self, a, b):
        return (a * b) % self.g if self.g else a * b

    def neg(self, a):
        return (-a) % self.g if self.g else -a

    def from_int(self, n: int):
        return self.convert(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def unit_inverse(self, a):
        if self.g:
            if gcd(a, self.g) != 1:
                return None
            return pow(a, -1, self.g)
        if a == 0:
            return None
        if all(p in self.s_primes for p in _prime_factors(Fraction(a).numerator)):
            return 1 / Fraction(a)
        return None

    def numerator(self, a) -> int:
        return int(a) if self.g else Fraction(a).numerator

    def content_normalize(self, coeffs: list) -> list:
        return coeffs

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        g = self.g
        for a in gens:
            g = gcd(g, self.numerator(a))
        if g == 0:
            return [BasePrime(INTEGERS, "zero")]
        return [BasePrime(INTEGERS, "principal", p) for p in _prime_factors(g)
                if p not in self.s_primes]

    def residue(self, q, a):
        if q.kind == "zero" and self.g:
            raise RingError("the zero prime does not contain a nonzero modulus")
        return self._rational_residue(q, a)

    def localize(self, c) -> Ring:
        if self.is_zero(c):
            raise DegenerateLocalizationError(f"localizing {self.name} at 0")
        c = self.numerator(c)
        new = IntegersLocalQuotient(self.inverted + (c,), self.modulus,
                                    name=f"Localized({self.name}, {c})", depth=self.depth + 1)
        if new.g == 1:
            return ZeroRing(self, f"{c} is nilpotent")
        return new

    def quotient(self, gens: Sequence) -> Ring:
        nums = tuple(self.numerator(a) for a in gens)
        shown = ", ".join(map(str, nums))
        new = IntegersLocalQuotient(self.inverted, self.modulus + nums,
                                    name=f"Quotient({self.name}, [{shown}])",
                                    depth=self.depth + 1)
        if new.g == 1:
            return ZeroRing(self, "unit ideal")
        return new


class IntegersMod(IntegersLocalQuotient):
    """Z/n, the quotient of Z by (n)."""

    def __init__(self, n: int) -> None:
        if not isinstance(n, int) or n < 2:
            raise RingError(f"Zmod({n}): modulus must be >= 2")
        super().__init__((), (n,), name=f"Zmod({n})")
        self.n = n


def _prod(xs: Sequence[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
