"""Factorization of univariate polynomials over residue fields.

The engine only ever needs the *distinct* monic irreducible factors of a
polynomial (the primes over a monic polynomial are indexed by them), so
``irreducible_factors`` returns those, sorted canonically.

Capabilities:

* finite fields (prime fields and algebraic extensions of them): Cantor-Zassenhaus
  with distinct-degree splitting;
* ``QQ`` and rational function fields over ``QQ``: sympy's multivariate factorizer
  after clearing denominators;
* rational function fields over ``GF(p)``: Kronecker substitution onto a single
  variable, univariate Cantor-Zassenhaus, then recombination of image factors;
* algebraic extensions of ``QQ`` or ``QQ(v...)``: Trager's norm method.

Anything else raises :class:`CapabilityError`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy.polys.rings import ring as sympy_ring

from .errors import CapabilityError
from .fields import (
    AlgebraicExtension,
    Field,
    FPoly,
    PrimeFieldGF,
    RationalFunctionField,
    RationalNumbers,
    pcompose,
    pderiv,
    pdivmod,
    pgcd,
    pkey,
    pmonic,
    padd,
    pmul,
    ppowmod,
    psub,
    ptrim,
    qq_to_fraction,
    sympy_domain,
)

MAX_KRONECKER_DEGREE = 600
MAX_RECOMBINATION_CANDIDATES = 1 << 16


@dataclass(frozen=True)
class FactorizationOracle:
    """Which residue fields the engine can factor over."""

    finite_fields: bool = True
    rationals: bool = True
    function_fields_char0: bool = True
    function_fields_charp: bool = True
    number_fields: bool = True

    def supports(self, K: Field) -> bool:
        try:
            self._route(K)
        except CapabilityError:
            return False
        return True

    def _route(self, K: Field) -> str:
        if K.order is not None and self.finite_fields:
            return "finite"
        if isinstance(K, RationalNumbers) and self.rationals:
            return "rationals"
        if isinstance(K, RationalFunctionField):
            if K.characteristic == 0 and self.function_fields_char0:
                return "rff0"
            if K.characteristic > 0 and self.function_fields_charp:
                return "rffp"
        if isinstance(K, AlgebraicExtension) and K.characteristic == 0 and self.number_fields:
            if isinstance(K.base, (RationalNumbers, RationalFunctionField)):
                return "trager"
        raise CapabilityError("factorization", f"no factorization oracle for {K.name}")

    def factor(self, K: Field, f: Sequence) -> list[FPoly]:
        return irreducible_factors(K, f, self)


DEFAULT_ORACLE = FactorizationOracle()


def irreducible_factors(K: Field, f: Sequence, oracle: FactorizationOracle = DEFAULT_ORACLE
                        ) -> list[FPoly]:
    """Distinct monic irreducible factors of ``f`` over ``K``."""
    f = ptrim(K, list(f))
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) == 1:
        return []
    f = pmonic(K, f)
    if len(f) == 2:
        return [f]
    route = oracle._route(K)
    if route == "finite":
        facs = _finite_field_factors(K, f)
    elif route == "rationals":
        facs = _rff_sympy_factors(K, f)
    elif route == "rff0":
        facs = _rff_sympy_factors(K, f)
    elif route == "rffp":
        facs = _kronecker_factors(K, f)
    else:
        facs = _trager_factors(K, f, oracle)
    return _canonical(K, facs)


def _canonical(K: Field, facs: list[FPoly]) -> list[FPoly]:
    seen: dict = {}
    for g in facs:
        g = pmonic(K, g)
        if len(g) >= 2:
            seen.setdefault(pkey(K, g), g)
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), repr(k)))]


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def _pth_root(K: Field, f: FPoly) -> FPoly:
    p, q = K.characteristic, K.order
    out = []
    for i in range(0, len(f), p):
        out.append(_field_pow(K, f[i], q // p))
    return ptrim(K, out)


def _field_pow(K: Field, a, e: int):
    result = K.one
    while e:
        if e & 1:
            result = K.mul(result, a)
        e >>= 1
        if e:
            a = K.mul(a, a)
    return result


def _finite_field_factors(K: Field, f: FPoly) -> list[FPoly]:
    rng = random.Random(0x5EED)
    out: list[FPoly] = []
    stack = [pmonic(K, f)]
    while stack:
        f = stack.pop()
        if len(f) < 2:
            continue
        df = pderiv(K, f)
        if not df:
            stack.append(_pth_root(K, f))
            continue
        g = pgcd(K, f, df)
        w = pdivmod(K, f, g)[0]
        for h, d in _distinct_degree(K, w):
            out.extend(_equal_degree(K, h, d, rng))
        while len(g) > 1:
            c = pgcd(K, g, w)
            if len(c) < 2:
                break
            g = pdivmod(K, g, c)[0]
        if len(g) > 1:
            stack.append(g)
    return out


def _distinct_degree(K: Field, w: FPoly) -> list[tuple[FPoly, int]]:
    q = K.order
    x = [K.zero, K.one]
    res = []
    h = x
    i = 0
    w = pmonic(K, w)
    while len(w) - 1 >= 2 * (i + 1):
        i += 1
        h = ppowmod(K, h, q, w)
        g = pgcd(K, w, psub(K, h, x))
        if len(g) > 1:
            res.append((g, i))
            w = pdivmod(K, w, g)[0]
            h = pdivmod(K, h, w)[1] if len(w) > 1 else h
    if len(w) > 1:
        res.append((w, len(w) - 1))
    return res


def _equal_degree(K: Field, g: FPoly, d: int, rng: random.Random) -> list[FPoly]:
    if len(g) - 1 == d:
        return [pmonic(K, g)]
    q = K.order
    n = len(g) - 1
    while True:
        a = ptrim(K, [K.random_element(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        if K.characteristic == 2:
            k = (q.bit_length() - 1) * d
            b = a
            t = a
            for _ in range(k - 1):
                t = pdivmod(K, pmul(K, t, t), g)[1]
                b = padd(K, b, t)
        else:
            b = psub(K, ppowmod(K, a, (q ** d - 1) // 2, g), [K.one])
        c = pgcd(K, g, b)
        if 1 < len(c) < len(g):
            return (_equal_degree(K, c, d, rng)
                    + _equal_degree(K, pdivmod(K, g, c)[0], d, rng))


# ---------------------------------------------------------------------------
# rational function fields: clearing denominators into k[v..., x]
# ---------------------------------------------------------------------------

def _as_multivariate(K: Field, f: FPoly, extra: str = "x__"):
    """Clear denominators of ``f`` over K in {QQ, k(v...)}; return (ring, F, names)."""
    if isinstance(K, RationalNumbers):
        R, *_ = sympy_ring(extra, sympy_domain(0))
        den = 1
        for c in f:
            den = den * c.denominator // _gcd(den, c.denominator)
        terms = {(i,): R.domain(Fraction(c * den).numerator, 1)
                 for i, c in enumerate(f) if c != 0}
        return R, R.from_dict(terms), ()
    assert isinstance(K, RationalFunctionField)
    names = K.names
    R, *_ = sympy_ring(",".join(names + (extra,)), K.domain)
    den = K.ring.one
    for c in f:
        den = den.lcm(c.denom)
    terms: dict = {}
    for i, c in enumerate(f):
        if not c.numer:
            continue
        e = c * K.K(den)
        # the lcm is monic, so a scalar denominator can remain
        poly = e.numer.quo_ground(e.denom.LC)
        for m, coeff in poly.terms():
            terms[m + (i,)] = coeff
    return R, R.from_dict(terms), names


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _from_multivariate(K: Field, F) -> FPoly:
    """Inverse of ``_as_multivariate`` for a factor F (x is the last variable)."""
    nv = len(F.ring.gens) - 1
    deg = max(m[-1] for m in F.monoms())
    coeffs: list[dict] = [dict() for _ in range(deg + 1)]
    for m, c in F.terms():
        coeffs[m[-1]][m[:-1]] = c
    if isinstance(K, RationalNumbers):
        out = [qq_to_fraction(d.get((), 0)) if d else Fraction(0) for d in coeffs]
        return pmonic(K, ptrim(K, out))
    out = []
    for d in coeffs:
        if not d:
            out.append(K.zero)
        else:
            out.append(K.K(K.ring.from_dict({m: c for m, c in d.items()})))
    assert nv == len(K.names)
    return pmonic(K, ptrim(K, out))


def _rff_sympy_factors(K: Field, f: FPoly) -> list[FPoly]:
    R, F, _ = _as_multivariate(K, f)
    _, facs = F.factor_list()
    out = []
    for g, _mult in facs:
        if g.degree(len(R.gens) - 1) > 0:
            out.append(_from_multivariate(K, g))
    return out


# ---------------------------------------------------------------------------
# Kronecker substitution for GF(p)(v...)
# ---------------------------------------------------------------------------

def _kronecker_factors(K: RationalFunctionField, f: FPoly) -> list[FPoly]:
    R, F, _ = _as_multivariate(K, f)
    nvars = len(R.gens)
    found: list = []
    work = [F]
    while work:
        G = work.pop()
        if G.degree(nvars - 1) <= 0:
            continue
        H = _kronecker_split(R, G)
        if H is None:
            found.append(G)
        else:
            work.append(H)
            work.append(G.exquo(H))
    return [_from_multivariate(K, g) for g in found]


def _kronecker_split(R, F):
    """Some proper factor of F, or None when F is irreducible."""
    nvars = len(R.gens)
    p = R.domain.mod
    D = max(max(m[i] for m in F.monoms()) for i in range(nvars)) + 1
    weights = [D ** i for i in range(nvars)]
    total = sum(w * max(m[i] for m in F.monoms()) for i, w in enumerate(weights))
    if total > MAX_KRONECKER_DEGREE:
        raise CapabilityError("factorization",
                              f"Kronecker image degree {total} exceeds {MAX_KRONECKER_DEGREE}")
    Fp = PrimeFieldGF(p)
    image = [0] * (total + 1)
    for m, c in F.terms():
        e = sum(a * w for a, w in zip(m, weights))
        image[e] = (image[e] + int(c)) % p
    image = ptrim(Fp, image)
    groups = _group_factors(_factor_with_multiplicity(Fp, image))
    for exps in exponent_vectors([e for _, e in groups], [len(g) - 1 for g, _ in groups],
                                 MAX_RECOMBINATION_CANDIDATES):
        if all(a == e for a, (_, e) in zip(exps, groups)):
            continue
        prod = [1]
        for (g, _), a in zip(groups, exps):
            for _ in range(a):
                prod = pmul(Fp, prod, g)
        cand = _invert_kronecker(R, prod, weights, D)
        if cand is None or cand.degree(nvars - 1) <= 0:
            continue
        q, r = F.div(cand)
        if not r:
            return cand
    return None


def _group_factors(factors: list[FPoly]) -> list[tuple[FPoly, int]]:
    out: list[list] = []
    for g in factors:
        for slot in out:
            if slot[0] == g:
                slot[1] += 1
                break
        else:
            out.append([g, 1])
    return [(g, e) for g, e in out]


def exponent_vectors(mults: Sequence[int], degs: Sequence[int], limit: int) -> list[tuple]:
    """All exponent vectors below ``mults``, by increasing total degree."""
    count = 1
    for m in mults:
        count *= m + 1
    if count > limit:
        raise CapabilityError("factorization",
                              f"{count} recombination candidates exceed the bound {limit}")
    vecs = itertools.product(*[range(m + 1) for m in mults])
    return sorted(vecs, key=lambda v: (sum(a * d for a, d in zip(v, degs)), v))


def _invert_kronecker(R, prod: FPoly, weights: list[int], D: int):
    terms = {}
    for e, c in enumerate(prod):
        if c == 0:
            continue
        digits = []
        rest = e
        for _ in weights:
            digits.append(rest % D)
            rest //= D
        if rest:
            return None
        terms[tuple(digits)] = R.domain(c)
    return R.from_dict(terms)


def _factor_with_multiplicity(K: Field, f: FPoly) -> list[FPoly]:
    """Irreducible factors of f over a finite field, repeated by multiplicity."""
    f = pmonic(K, f)
    out = []
    for g in _canonical(K, _finite_field_factors(K, f)):
        while True:
            q, r = pdivmod(K, f, g)
            if r:
                break
            out.append(g)
            f = q
    return out


# ---------------------------------------------------------------------------
# Trager's norm method for algebraic extensions in characteristic zero
# ---------------------------------------------------------------------------

def _trager_factors(L: AlgebraicExtension, f: FPoly, oracle: FactorizationOracle) -> list[FPoly]:
    B = L.base
    f = pmonic(L, f)
    df = pderiv(L, f)
    g = pgcd(L, f, df)
    if len(g) > 1:
        f = pdivmod(L, f, g)[0]
    if len(f) == 2:
        return [f]
    for s in _shifts():
        N = _norm(L, f, s)
        if len(pgcd(B, N, pderiv(B, N))) == 1:
            break
    alpha = L.generator()
    shift = [L.mul(L.from_int(s), alpha), L.one]
    out = []
    for Nj in irreducible_factors(B, N, oracle):
        lifted = pcompose(L, [L.embed(c) for c in Nj], shift)
        h = pgcd(L, f, lifted)
        if len(h) > 1:
            out.append(h)
    return out


def _shifts():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _norm(L: AlgebraicExtension, f: FPoly, s: int) -> FPoly:
    """Res_z(m(z), f(y - s z)) as a polynomial in y over the base field."""
    B = L.base
    if isinstance(B, RationalNumbers):
        names: tuple = ()
    else:
        names = B.names
    R, *gens = sympy_ring(",".join(("z__",) + names + ("y__",)), sympy_domain(0))
    z, y = gens[0], gens[-1]

    def lift_base(c):
        if isinstance(B, RationalNumbers):
            return R(R.domain(c.numerator, c.denominator)), R.one
        num = R.from_dict({(0,) + m + (0,): v for m, v in c.numer.terms()})
        den = R.from_dict({(0,) + m + (0,): v for m, v in c.denom.terms()})
        return num, den

    def lift_elem(a):
        num, den = R.zero, R.one
        for i, c in enumerate(a):
            cn, cd = lift_base(c)
            num = num * cd + den * cn * z ** i
            den = den * cd
        return num, den

    mn, md = lift_elem(tuple(L.modulus))
    G = R.zero
    Gden = R.one
    arg = y - s * z
    for i, c in enumerate(f):
        cn, cd = lift_elem(c)
        G = G * cd + Gden * cn * arg ** i
        Gden = Gden * cd
    # the common denominator only scales the norm by a unit of the base field
    res = mn.resultant(G)
    S = res.ring
    deg = max((m[-1] for m in res.monoms()), default=0)
    coeffs: list = [dict() for _ in range(deg + 1)]
    for m, c in res.terms():
        coeffs[m[-1]][m[:-1]] = c
    if isinstance(B, RationalNumbers):
        out = [qq_to_fraction(d.get((), S.domain.zero)) for d in coeffs]
    else:
        out = [B.K(B.ring.from_dict(d)) if d else B.zero for d in coeffs]
    return pmonic(B, ptrim(B, out))
