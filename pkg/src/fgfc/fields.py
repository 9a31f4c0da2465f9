"""Residue fields and dense univariate polynomial helpers over them.

Every prime the engine handles has a computable residue field: the rationals,
a prime field, a rational function field over one of those, or a simple
algebraic extension of such a field.  Univariate polynomials over a field are
plain lists of coefficients, lowest degree first, with no trailing zeros; the
zero polynomial is the empty list.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Sequence

from sympy.polys.domains import GF, QQ
from sympy.polys.fields import field as sympy_field

from .errors import CapabilityError

FPoly = list  # list of field elements, lowest degree first


def qq_to_fraction(c: Any) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class Field:
    """Interface shared by all residue fields."""

    characteristic: int = 0
    order: int | None = None
    name: str = "?"

    zero: Any
    one: Any

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self.one / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def from_int(self, n: int):
        raise NotImplementedError

    def key(self, a):
        """Hashable canonical form of ``a``."""
        return a

    def render(self, a) -> str:
        return str(a)

    def random_element(self, rng: random.Random):
        raise CapabilityError("finite-field", f"{self.name} is not finite")

    def prime_field(self) -> "Field":
        return RATIONALS if self.characteristic == 0 else PrimeFieldGF(self.characteristic)

    def __repr__(self) -> str:
        return self.name


class RationalNumbers(Field):
    characteristic = 0
    name = "QQ"

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return Fraction(1) / a

    def render(self, a: Fraction) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalNumbers)

    def __hash__(self) -> int:
        return hash("QQ")


RATIONALS = RationalNumbers()


class PrimeFieldGF(Field):
    """F_p with elements stored as ints in ``range(p)``."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.characteristic = p
        self.order = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeFieldGF) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


def sympy_domain(char: int):
    return QQ if char == 0 else GF(char)


class RationalFunctionField(Field):
    """k(v_1, ..., v_r) over k = QQ or GF(p), backed by sympy's fraction field."""

    def __init__(self, char: int, names: Sequence[str]) -> None:
        if not names:
            raise ValueError("rational function field needs at least one variable")
        self.characteristic = char
        self.names = tuple(names)
        self.domain = sympy_domain(char)
        self.K, *self.gens = sympy_field(",".join(self.names), self.domain)
        self.ring = self.K.ring
        self.zero = self.K.zero
        self.one = self.K.one
        base = "QQ" if char == 0 else f"GF({char})"
        self.name = f"{base}({', '.join(self.names)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalFunctionField)
                and other.characteristic == self.characteristic
                and other.names == self.names)

    def __hash__(self) -> int:
        return hash(("RFF", self.characteristic, self.names))

    def from_int(self, n: int):
        return self.K(n)

    def coeff(self, c):
        """Convert a base-field scalar (Fraction or int) into the sympy domain."""
        if self.characteristic == 0:
            c = Fraction(c)
            return self.domain(c.numerator, c.denominator)
        return self.domain(int(c) % self.characteristic)

    def from_scalar(self, c):
        return self.K(self.ring.ground_new(self.coeff(c)))

    def poly_from_terms(self, terms: dict):
        """Polynomial ring element from ``{exponent tuple: scalar}``."""
        return self.ring.from_dict({m: self.coeff(c) for m, c in terms.items()})

    def from_terms(self, num: dict, den: dict | None = None):
        n = self.K(self.poly_from_terms(num))
        if den is None:
            return n
        return n / self.K(self.poly_from_terms(den))

    def scalar_out(self, c):
        if self.characteristic == 0:
            return qq_to_fraction(c)
        return int(c) % self.characteristic

    def is_zero(self, a) -> bool:
        return not a.numer

    def inv(self, a):
        if not a.numer:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return 1 / a

    def key(self, a):
        num, den = a.numer, a.denom
        lc = den.LC
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
        return (tuple(sorted((m, str(c)) for m, c in num.terms())),
                tuple(sorted((m, str(c)) for m, c in den.terms())))

    def render(self, a) -> str:
        if a.denom.is_ground:
            return render_sympy_poly(a.numer.quo_ground(a.denom.LC), self.names,
                                     self.characteristic)
        num = render_sympy_poly(a.numer, self.names, self.characteristic)
        den = render_sympy_poly(a.denom, self.names, self.characteristic)
        return f"({num})/({den})"

    def variable(self, name: str):
        return self.gens[self.names.index(name)]


def render_scalar(c, char: int) -> str:
    if char == 0:
        return str(qq_to_fraction(c) if not isinstance(c, (int, Fraction)) else c)
    return str(int(c) % char)


def render_sympy_poly(p, names: Sequence[str], char: int) -> str:
    """Render a sympy polynomial with ``^`` powers, highest terms first."""
    terms = sorted(p.terms(), reverse=True)
    if not terms:
        return "0"
    out: list[str] = []
    for monom, c in terms:
        mono = "*".join(f"{n}^{e}" if e > 1 else n
                        for n, e in zip(names, monom) if e)
        cs = render_scalar(c, char)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class AlgebraicExtension(Field):
    """K[z]/(m(z)) for an irreducible monic ``modulus`` of degree >= 2 over K."""

    def __init__(self, base: Field, modulus: FPoly, name: str = "z") -> None:
        modulus = ptrim(base, list(modulus))
        if len(modulus) < 3:
            raise ValueError("extension modulus must have degree >= 2")
        if not base.eq(modulus[-1], base.one):
            raise ValueError("extension modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.gen_name = name
        self.characteristic = base.characteristic
        self.order = None if base.order is None else base.order ** self.degree
        self.zero = ()
        self.one = (base.one,)
        mod = " + ".join(base.render(c) + f"*{name}^{i}" for i, c in enumerate(modulus))
        self.name = f"{base.name}[{name}]/({mod})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraicExtension) and other.base == self.base
                and tuple(self.base.key(c) for c in other.modulus)
                == tuple(self.base.key(c) for c in self.modulus))

    def __hash__(self) -> int:
        return hash(("ALG", self.base, tuple(self.base.key(c) for c in self.modulus)))

    def reduce(self, a: FPoly) -> tuple:
        return tuple(prem(self.base, ptrim(self.base, list(a)), self.modulus))

    def embed(self, c) -> tuple:
        return tuple(ptrim(self.base, [c]))

    def generator(self) -> tuple:
        return self.reduce([self.base.zero, self.base.one])

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def add(self, a, b):
        return tuple(padd(self.base, list(a), list(b)))

    def sub(self, a, b):
        return tuple(psub(self.base, list(a), list(b)))

    def neg(self, a):
        return tuple(pneg(self.base, list(a)))

    def mul(self, a, b):
        return self.reduce(pmul(self.base, list(a), list(b)))

    def is_zero(self, a) -> bool:
        return len(a) == 0

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        g, s, _ = pxgcd(self.base, list(a), self.modulus)
        # g is a nonzero constant since the modulus is irreducible
        return self.reduce(pscale(self.base, s, self.base.inv(g[0])))

    def key(self, a):
        return tuple(self.base.key(c) for c in a)

    def render(self, a) -> str:
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if self.base.is_zero(c):
                continue
            cs = self.base.render(c)
            if i == 0:
                parts.append(cs)
            else:
                mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                parts.append(mono if cs == "1" else f"({cs})*{mono}")
        return " + ".join(parts)

    def random_element(self, rng: random.Random):
        return tuple(ptrim(self.base, [self.base.random_element(rng)
                                       for _ in range(self.degree)]))


# ---------------------------------------------------------------------------
# dense univariate polynomials over a field
# ---------------------------------------------------------------------------

def ptrim(K: Field, a: list) -> list:
    while a and K.is_zero(a[-1]):
        a.pop()
    return a


def pdeg(a: Sequence) -> int:
    return len(a) - 1


def padd(K: Field, a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return ptrim(K, out)


def pneg(K: Field, a: Sequence) -> list:
    return [K.neg(c) for c in a]


def psub(K: Field, a: Sequence, b: Sequence) -> list:
    return padd(K, a, pneg(K, b))


def pscale(K: Field, a: Sequence, c) -> list:
    if K.is_zero(c):
        return []
    return ptrim(K, [K.mul(x, c) for x in a])


def pmul(K: Field, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return ptrim(K, out)


def pdivmod(K: Field, a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lc = K.inv(b[-1])
    q = [K.zero] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        f = K.mul(r[-1], inv_lc)
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] = K.sub(r[i + shift], K.mul(f, c))
        r.pop()
        ptrim(K, r)
    return ptrim(K, q), r


def prem(K: Field, a: Sequence, b: Sequence) -> list:
    return pdivmod(K, a, b)[1]


def pmonic(K: Field, a: Sequence) -> list:
    if not a:
        return []
    return pscale(K, a, K.inv(a[-1]))


def pgcd(K: Field, a: Sequence, b: Sequence) -> list:
    a, b = ptrim(K, list(a)), ptrim(K, list(b))
    while b:
        a, b = b, prem(K, a, b)
    return pmonic(K, a)


def pxgcd(K: Field, a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) with s*a + t*b = g (g not normalized)."""
    r0, r1 = ptrim(K, list(a)), ptrim(K, list(b))
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = pdivmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(K, s0, pmul(K, q, s1))
        t0, t1 = t1, psub(K, t0, pmul(K, q, t1))
    return r0, s0, t0


def pderiv(K: Field, a: Sequence) -> list:
    return ptrim(K, [K.mul(K.from_int(i), a[i]) for i in range(1, len(a))])


def peval(K: Field, a: Sequence, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def ppowmod(K: Field, a: Sequence, e: int, m: Sequence) -> list:
    result = [K.one]
    base = prem(K, a, m)
    while e:
        if e & 1:
            result = prem(K, pmul(K, result, base), m)
        e >>= 1
        if e:
            base = prem(K, pmul(K, base, base), m)
    return result


def pcompose(K: Field, a: Sequence, b: Sequence) -> list:
    """a(b(x))."""
    out: list = []
    for c in reversed(a):
        out = padd(K, pmul(K, out, b), [c] if not K.is_zero(c) else [])
    return out


def pkey(K: Field, a: Sequence) -> tuple:
    return tuple(K.key(c) for c in a)


def prender(K: Field, a: Sequence, var: str = "x") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        if K.is_zero(a[i]):
            continue
        cs = K.render(a[i])
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"({cs})*{mono}")
    return " + ".join(parts)
