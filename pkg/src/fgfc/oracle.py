"""Independent brute-force checks of engine output, and seeded random corpora.

Nothing here calls the engine or the engine's factorization code; the oracles
share only the rings, residue fields and polynomial containers.

* :func:`gcd_factor_oracle` -- k[x] is a PID, so Min(I) is read off the gcd of
  the generators, factored by exhaustive divisor search (F_p) or rational roots
  plus Kronecker's interpolation search (Q).
* :func:`valuation_shape_oracle` -- every prime of V[x] contracts to a chain
  prime P_j and is then P_j V[x] or the prime of an irreducible g over
  Frac(V/P_j); enumerate those candidates, keep the ones containing I, filter.
* :func:`bivariate_certificate_oracle` -- for F_p[x, y]: each claimed prime is
  checked prime and containing I, the product of the claimed primes is checked
  to lie in sqrt(I) (Rabinowitsch trick, Groebner bases), and the claimed primes
  are checked pairwise incomparable.  Together these pin down Min(I) exactly.
* :func:`fitting_support_oracle` -- minimal primes of the support of a
  presented module from ranks of the matrix over residue fields.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Any, Callable, Sequence

import sympy
from sympy import Poly as SPoly
from sympy import divisors, groebner, primerange, symbols

from .errors import OracleUnavailable
from .fields import (RATIONALS, AlgebraicExtension, Field, PrimeFieldGF, RationalFunctionField,
                     pdeg, pderiv, pdivmod, pgcd, pkey, pmonic, pmul, ppowmod, prem,
                     psub, ptrim)
from .poly import Poly
from .rings.base import BasePrime, Ring
from .rings.integers import INTEGERS, PrimeField, RationalField
from .rings.valuation import ValuationRing

MAX_EXHAUSTIVE_P = 13
MAX_DEGREE = 8

# ---------------------------------------------------------------------------
# factoring over F_p and Q, written independently of the engine's factorizer


def _monic_polys(K: Field, p: int, k: int):
    for tail in itertools.product(range(p), repeat=k):
        yield [K.from_int(c) for c in tail] + [K.one]


def fp_distinct_factors(f: Sequence, p: int) -> list[list]:
    """Distinct monic irreducible factors over F_p by exhaustive divisor search."""
    K = PrimeFieldGF(p)
    g = pmonic(K, ptrim(K, [c % p for c in f]))
    if pdeg(g) > MAX_DEGREE or p > MAX_EXHAUSTIVE_P:
        raise OracleUnavailable(f"exhaustive search bound exceeded (p={p}, deg={pdeg(g)})")
    out = []
    k = 1
    while 2 * k <= pdeg(g):
        for h in _monic_polys(K, p, k):
            if not prem(K, g, h):
                out.append(h)
                while not prem(K, g, h):
                    g = pdivmod(K, g, h)[0]
        k += 1
    if pdeg(g) >= 1:
        out.append(g)
    return out


def _fp_degree_pattern(f: Sequence[int], p: int) -> list[int] | None:
    """Degrees of the irreducible factors mod p, when f stays squarefree of full degree."""
    K = PrimeFieldGF(p)
    g = ptrim(K, [c % p for c in f])
    if pdeg(g) != len(f) - 1:
        return None
    if pdeg(pgcd(K, g, pderiv(K, g))) > 0:
        return None
    return [pdeg(h) for h in fp_distinct_factors(g, p)]


def _subset_sums(degs: Sequence[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _primitive_int(f: Sequence[Fraction]) -> list[int]:
    den = 1
    for c in f:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _eval_int(f: Sequence[int], a: int) -> int:
    out = 0
    for c in reversed(f):
        out = out * a + c
    return out


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Lagrange interpolation over Q, coefficients lowest first."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            out[k] += scale * basis[k]
    return out


def _rational_roots(f: Sequence[int]) -> list[Fraction]:
    roots = set()
    if f[0] == 0:
        roots.add(Fraction(0))
    a0 = next(c for c in f if c)
    an = f[-1]
    for num in divisors(abs(a0)):
        for den in divisors(abs(an)):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if _eval_q(f, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _eval_q(f: Sequence, r: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(f):
        out = out * r + c
    return out


def _kronecker_divisor(f: list[int], d: int) -> list[Fraction] | None:
    """A factor of degree d of the integer polynomial f, or None."""
    K = RATIONALS
    pts = [a for a in range(-15, 16) if _eval_int(f, a) != 0]
    pts.sort(key=lambda a: (len(divisors(abs(_eval_int(f, a)))), abs(a)))
    pts = pts[:d + 1]
    if len(pts) < d + 1:
        raise OracleUnavailable("not enough evaluation points for the interpolation search")
    choices = []
    for idx, a in enumerate(pts):
        ds = divisors(abs(_eval_int(f, a)))
        choices.append(ds if idx == 0 else ds + [-v for v in ds])
    fq = [Fraction(c) for c in f]
    for ys in itertools.product(*choices):
        cand = ptrim(K, _interpolate(pts, ys))
        if pdeg(cand) != d or any(c.denominator != 1 for c in cand):
            continue
        if not prem(K, fq, cand):
            return cand
    return None


def q_distinct_factors(f: Sequence) -> list[list[Fraction]]:
    """Distinct monic irreducible factors over Q: rational roots, then Kronecker."""
    K = RATIONALS
    f = ptrim(K, [Fraction(c) for c in f])
    if pdeg(f) > MAX_DEGREE:
        raise OracleUnavailable(f"degree {pdeg(f)} exceeds the Kronecker search bound")
    if pdeg(f) < 1:
        return []
    sq = pdivmod(K, f, pgcd(K, f, pderiv(K, f)))[0]
    out: list[list[Fraction]] = []
    for r in _rational_roots(_primitive_int(sq)):
        lin = [-r, Fraction(1)]
        out.append(lin)
        sq = pdivmod(K, sq, lin)[0]
    pending = [sq] if pdeg(sq) >= 1 else []
    while pending:
        g = pending.pop()
        gi = _primitive_int(g)
        n = len(gi) - 1
        allowed = set(range(n + 1))
        for p in primerange(3, MAX_EXHAUSTIVE_P + 1):
            pat = _fp_degree_pattern(gi, p)
            if pat is not None:
                allowed &= _subset_sums(pat)
        split = None
        for d in range(2, n // 2 + 1):
            if d in allowed:
                split = _kronecker_divisor(gi, d)
                if split is not None:
                    break
        if split is None:
            out.append(pmonic(K, g))
        else:
            pending.append(split)
            pending.append(pdivmod(K, [Fraction(c) for c in gi], split)[0])
    return [pmonic(K, g) for g in out]


def field_factors(K: Field, f: Sequence) -> list[list]:
    if isinstance(K, PrimeFieldGF):
        return fp_distinct_factors(f, K.characteristic)
    if K is RATIONALS or K == RATIONALS:
        return q_distinct_factors(f)
    raise OracleUnavailable(f"no brute-force factorization over {K.name}")


# ---------------------------------------------------------------------------
# univariate ideals over a field

def _field_of(R: Ring) -> Field:
    if isinstance(R, RationalField):
        return RATIONALS
    if isinstance(R, PrimeField):
        return PrimeFieldGF(R.p)
    raise OracleUnavailable(f"the gcd oracle works over Q or F_p, not {R.name}")


def gcd_factor_oracle(gens: Sequence[Poly], R: Ring | None = None) -> frozenset:
    """Min(I) for I in k[x] as a set of ``("zero",)`` / ``("poly", monic coeffs)``."""
    R = R or gens[0].ring
    K = _field_of(R)
    g: list = []
    for h in gens:
        hb = ptrim(K, list(h.coeffs))
        if hb:
            g = pgcd(K, g, hb) if g else pmonic(K, hb)
    if not g:
        return frozenset({("zero",)})
    if pdeg(g) == 0:
        return frozenset()
    return frozenset(("poly", tuple(h)) for h in field_factors(K, g))


def univariate_engine_set(primes: Sequence) -> frozenset:
    """Engine primes over k[x] in the gcd oracle's normal form."""
    out = set()
    for q in primes:
        if q.g is None:
            out.add(("zero",))
        else:
            out.add(("poly", tuple(q.g)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# V_n[x]: candidate shapes over the chain primes

def _chain(V: ValuationRing, j: int) -> BasePrime:
    return BasePrime(V, "chain", j)


def _rff_factors(K: RationalFunctionField, f: Sequence) -> list[list]:
    """Irreducible factors over k(t..) by Kronecker substitution and recombination."""
    names = K.names
    x = sympy.Symbol("x__o")
    ts = [sympy.Symbol(n) for n in names]
    expr = sympy.together(sum((c.as_expr() * x**i for i, c in enumerate(f)), sympy.Integer(0)))
    num, _ = sympy.fraction(expr)
    # content in the t's is a unit over k(t)
    cont = sympy.Integer(0)
    for c in SPoly(num, x).all_coeffs():
        cont = sympy.gcd(cont, c)
    num = sympy.cancel(num / cont)
    gens = ts + [x]
    opts = {"modulus": K.characteristic} if K.characteristic else {"domain": "QQ"}
    F = SPoly(num, *gens, **opts)
    degs = F.degree_list()
    D = max(degs) + 1
    weights = [D ** (i + 1) for i in range(len(ts))] + [1]
    z = sympy.Symbol("z__o")
    image = sympy.expand(F.as_expr().subs({g: z**w for g, w in zip(gens, weights)},
                                          simultaneous=True))
    uopts = {"modulus": K.characteristic} if K.characteristic else {}
    _, ufacs = sympy.factor_list(image, z, **uopts)
    # recombine over distinct image factors with multiplicities, smallest product first
    groups = [(u, e) for u, e in ufacs]
    count = 1
    for _, e in groups:
        count *= e + 1
    if count > 1 << 16:
        raise OracleUnavailable("too many image factor combinations for recombination")
    degs = [SPoly(u, z).degree() for u, _ in groups]
    vecs = sorted(itertools.product(*[range(e + 1) for _, e in groups]),
                  key=lambda v: (sum(a * d for a, d in zip(v, degs)), v))
    current = F
    found = []
    used = [0] * len(groups)
    for v in vecs:
        if any(a + u > e for a, u, (_, e) in zip(v, used, groups)):
            continue
        prod = sympy.Integer(1)
        for (u, _), a in zip(groups, v):
            prod *= u**a
        cand = _invert_weights(SPoly(sympy.expand(prod), z, **uopts), gens, D)
        if cand is None or cand.degree(x) <= 0:
            continue
        while True:
            q, r = sympy.div(current, cand)
            if not r.is_zero:
                break
            found.append(cand)
            current = q
            used = [a + u for a, u in zip(v, used)]
            if any(u > e for u, (_, e) in zip(used, groups)):
                break
    out = []
    for cand in found:
        cs = SPoly(cand.as_expr(), x).all_coeffs()[::-1]
        lc = cs[-1]
        out.append([K.K.from_expr(sympy.cancel(c / lc)) for c in cs])
    seen = {}
    for g in out:
        seen.setdefault(pkey(K, g), g)
    return list(seen.values())


def _invert_weights(P: SPoly, gens: Sequence, D: int):
    """Undo the substitution x -> z, t_i -> z^(D^i); None if digits overflow."""
    n = len(gens)
    terms = {}
    for (e,), c in P.terms():
        digits = []
        rest = e
        for _ in range(n):
            digits.append(rest % D)
            rest //= D
        if rest:
            return None
        # digit 0 belongs to x (weight 1), digit i to t_i (weight D^i)
        mono = tuple(digits[1:]) + (digits[0],)
        terms[mono] = c
    dom = P.domain
    return SPoly.from_dict(terms, *gens, domain=dom)


def _factors_over(K: Field, f: Sequence) -> list[list]:
    if isinstance(K, RationalFunctionField):
        return _rff_factors(K, f)
    return field_factors(K, f)


@dataclass(frozen=True)
class ShapePrime:
    """(P_j; g) with g monic irreducible over Frac(V/P_j), or g None."""

    j: int
    g: tuple | None

    def key(self, V: ValuationRing):
        K = V.prime_residue_field(_chain(V, self.j))
        return (self.j, None if self.g is None else pkey(K, list(self.g)))


def _shape_contains(V: ValuationRing, Q: ShapePrime, h: Poly) -> bool:
    q = _chain(V, Q.j)
    K = V.prime_residue_field(q)
    hb = ptrim(K, [V.residue(q, c) for c in h.coeffs])
    if not hb:
        return True
    if Q.g is None:
        return False
    return not prem(K, hb, list(Q.g))


def _shape_lift(V: ValuationRing, Q: ShapePrime, var: str) -> Poly:
    q = _chain(V, Q.j)
    pairs = [V.prime_lift(q, c) for c in Q.g]
    den = V.one
    for _, d in pairs:
        den = den * d
    coeffs = [n * den / d for n, d in pairs]
    live = [c for c in coeffs if c.numer]
    pivot = min(live, key=V.value)
    return Poly.make(V, var, [c / pivot for c in coeffs])


def _shape_le(V: ValuationRing, Q2: ShapePrime, Q1: ShapePrime, var: str) -> bool:
    """Q2 ⊆ Q1."""
    if Q2.j > Q1.j:
        return False
    if Q2.g is None:
        return True
    if Q2.j == Q1.j:
        return Q1.g is not None and Q1.key(V) == Q2.key(V)
    return _shape_contains(V, Q1, _shape_lift(V, Q2, var))


def valuation_shape_oracle(V: ValuationRing, gens: Sequence[Poly], max_degree: int = 6) -> list[ShapePrime]:
    """Min(I) for I in V_n[x] by enumerating the candidate shapes (n <= 3)."""
    if V.rank > 3:
        raise OracleUnavailable("the shape oracle is limited to rank 3")
    gens = [h for h in gens if not h.is_zero]
    if any(h.deg > max_degree for h in gens):
        raise OracleUnavailable("generator degree above the shape oracle bound")
    var = gens[0].var if gens else "x"
    cands: list[ShapePrime] = []
    for j in range(V.rank + 1):
        q = _chain(V, j)
        K = V.prime_residue_field(q)
        cands.append(ShapePrime(j, None))
        g: list = []
        for h in gens:
            hb = ptrim(K, [V.residue(q, c) for c in h.coeffs])
            if hb:
                g = pgcd(K, g, hb) if g else pmonic(K, hb)
        if g and pdeg(g) >= 1:
            for fac in _factors_over(K, g):
                cands.append(ShapePrime(j, tuple(pmonic(K, fac))))
    good = [Q for Q in cands if all(_shape_contains(V, Q, h) for h in gens)]
    uniq = {}
    for Q in good:
        uniq.setdefault(repr(Q.key(V)), Q)
    good = list(uniq.values())
    return [Q for Q in good
            if not any(O is not Q and _shape_le(V, O, Q, var) for O in good)]


def valuation_engine_set(V: ValuationRing, primes: Sequence) -> frozenset:
    out = set()
    for q in primes:
        K = V.prime_residue_field(q.base)
        out.add(repr((q.base.value, None if q.g is None else pkey(K, list(q.g)))))
    return frozenset(out)


def valuation_oracle_set(V: ValuationRing, shapes: Sequence[ShapePrime]) -> frozenset:
    return frozenset(repr(Q.key(V)) for Q in shapes)


# ---------------------------------------------------------------------------
# F_p[x, y]: certificate of the claimed minimal primes

def _sym_poly(p, xs: Sequence) -> Any:
    """Nested Poly (outer variable last in ``xs``) to a sympy expression."""
    if not isinstance(p, Poly):
        return sympy.Integer(int(p)) if not isinstance(p, Fraction) else sympy.Rational(p.numerator, p.denominator)
    v = sympy.Symbol(p.var)
    return sum((_sym_poly(c, xs) * v**i for i, c in enumerate(p.coeffs)), sympy.Integer(0))


def _prime_generators(q, xs) -> list:
    if isinstance(q, BasePrime):
        return []
    return [_sym_poly(g, xs) for g in q.polypart()]


def _irreducible_fp_univariate(expr, x, p) -> bool:
    P = SPoly(expr, x, modulus=p)
    cs = [int(c) % p for c in P.all_coeffs()[::-1]]
    return len(fp_distinct_factors(cs, p)) == 1 and _fp_squarefree(cs, p)


def _fp_squarefree(cs, p) -> bool:
    K = PrimeFieldGF(p)
    g = ptrim(K, cs)
    return pdeg(pgcd(K, g, pderiv(K, g))) == 0 and _is_power_free(cs, p)


def _is_power_free(cs, p) -> bool:
    K = PrimeFieldGF(p)
    facs = fp_distinct_factors(cs, p)
    rest = pmonic(K, ptrim(K, cs))
    for h in facs:
        rest = pdivmod(K, rest, h)[0]
    return pdeg(rest) == 0


def _rabin_irreducible(L: AlgebraicExtension, g: list) -> bool:
    """Rabin's test over the finite field L."""
    n = pdeg(g)
    if n <= 0:
        return False
    q = L.order
    X = [L.zero, L.one]
    g = pmonic(L, g)
    if ppowmod(L, X, q ** n, g) != ptrim(L, pdivmod(L, X, g)[1]):
        return False
    for r in sympy.primefactors(n):
        h = psub(L, ppowmod(L, X, q ** (n // r), g), X)
        if pdeg(pgcd(L, ptrim(L, h), g)) > 0:
            return False
    return True


def _irreducible_over_fp_x(G, x, y, p) -> bool:
    """G in F_p[x][y] primitive of y-degree <= 3: irreducible iff no factor of y-degree 0 or 1."""
    P = SPoly(G, y, x, modulus=p)
    dy = P.degree(y)
    if dy > 3:
        raise OracleUnavailable("y-degree above 3 in the bivariate certificate")
    cy = [SPoly(c, x, modulus=p) for c in SPoly(G, y).all_coeffs()[::-1]]
    cont = cy[0]
    for c in cy[1:]:
        cont = sympy.gcd(cont, c)
    if cont.degree() > 0:
        return False
    if dy == 1:
        return True
    # a factor of y-degree 1 is b*y - a with a | c_0 and b | c_dy (over F_p[x])
    c0, cd = cy[0], cy[-1]
    if c0.is_zero:
        return False
    for a in _fp_poly_divisors(c0, x, p):
        for b in _fp_poly_divisors(cd, x, p):
            lin = SPoly(b.as_expr() * y - a.as_expr(), y, x, modulus=p)
            if sympy.rem(P, lin).is_zero:
                return False
    return True


def _fp_poly_divisors(P, x, p) -> list:
    """All divisors of P in F_p[x], up to F_p^* scaling on one side."""
    cs = [int(c) % p for c in SPoly(P, x, modulus=p).all_coeffs()[::-1]]
    K = PrimeFieldGF(p)
    facs = []
    rest = pmonic(K, ptrim(K, cs))
    for h in fp_distinct_factors(cs, p):
        e = 0
        while pdeg(rest) > 0 and not prem(K, rest, h):
            rest = pdivmod(K, rest, h)[0]
            e += 1
        facs.append((h, e))
    out = []
    for exps in itertools.product(*[range(e + 1) for _, e in facs]):
        d = [K.one]
        for (h, _), k in zip(facs, exps):
            for _ in range(k):
                d = pmul(K, d, h)
        for unit in range(1, p):
            out.append(SPoly(sum((c * unit % p) * sympy.Symbol(str(x))**i for i, c in enumerate(d)),
                             x, modulus=p))
    return out


def _certify_prime(q, x, y, p) -> bool:
    """Primality of a claimed prime of F_p[x, y] in the engine's triangular shapes."""
    if isinstance(q, BasePrime):
        return True
    gens = q.polypart()
    exprs = [_sym_poly(g, (x, y)) for g in gens]
    if not exprs:
        return True
    vars_of = [g.var for g in gens]
    if len(exprs) == 1 and vars_of[0] == str(y) and _sym_poly_has(exprs[0], x):
        return _irreducible_over_fp_x(exprs[0], x, y, p)
    if len(exprs) == 1:
        v = sympy.Symbol(vars_of[0])
        return _irreducible_fp_univariate(exprs[0], v, p)
    # (g1(x), g2(x, y)): g1 irreducible, g2 irreducible over F_p[x]/(g1)
    g1, g2 = exprs
    if not _irreducible_fp_univariate(g1, x, p):
        return False
    K = PrimeFieldGF(p)
    m = [int(c) % p for c in SPoly(g1, x, modulus=p).all_coeffs()[::-1]]
    m = pmonic(K, m)
    L = AlgebraicExtension(K, m, name="u") if pdeg(m) >= 2 else None
    ycs = SPoly(g2, y).all_coeffs()[::-1]
    if L is None:
        root = (-m[0]) % p
        vals = [int(SPoly(c, x, modulus=p).eval(root)) % p for c in ycs]
        return _irreducible_fp_univariate(sum(v * y**i for i, v in enumerate(vals)), y, p)
    coeffs = []
    for c in ycs:
        cc = [int(v) % p for v in SPoly(c, x, modulus=p).all_coeffs()[::-1]]
        coeffs.append(L.reduce(ptrim(K, cc)))
    return _rabin_irreducible(L, ptrim(L, coeffs))


def _sym_poly_has(expr, v) -> bool:
    return v in expr.free_symbols


def bivariate_certificate_oracle(primes: Sequence, gens: Sequence, p: int,
                                 names: tuple[str, str] = ("x", "y")) -> dict:
    """Check that ``primes`` is exactly Min(I) for I = (gens) in F_p[x, y]."""
    x, y = symbols(names)
    z = sympy.Symbol("z__rab")
    I = [sympy.expand(_sym_poly(g, (x, y))) for g in gens]
    I = [e for e in I if e != 0]
    order = dict(order="lex", modulus=p)
    verdict = {"contains": True, "prime": True, "radical": True, "incomparable": True}
    bases = []
    for q in primes:
        Q = _prime_generators(q, (x, y))
        GB = groebner(Q, x, y, **order) if Q else None
        bases.append((Q, GB))
        for h in I:
            if GB is None or not GB.contains(h):
                verdict["contains"] = False
        if not _certify_prime(q, x, y, p):
            verdict["prime"] = False
    # product of the primes lies in sqrt(I)
    if I:
        prods = [sympy.Integer(1)]
        for Q, _ in bases:
            prods = [sympy.expand(a * b) for a in prods for b in (Q or [sympy.Integer(0)])]
        for h in prods:
            G = groebner(I + [1 - z * h], z, x, y, order="lex", modulus=p)
            if not (len(G.exprs) == 1 and G.exprs[0] == 1):
                verdict["radical"] = False
                break
    else:
        verdict["radical"] = all(not Q for Q, _ in bases)
    for (i, (Qi, Gi)), (j, (Qj, Gj)) in itertools.permutations(enumerate(bases), 2):
        # Qi ⊆ Qj ?
        if all((Gj is not None and Gj.contains(h)) for h in Qi):
            verdict["incomparable"] = False
    verdict["agree"] = all(verdict.values())
    return verdict


# ---------------------------------------------------------------------------
# Fitting ideals: supports from ranks over residue fields

def _rank_mod(matrix: Sequence[Sequence], p: int | None) -> int:
    rows = [[Fraction(a) if p is None else a % p for a in r] for r in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = (1 / rows[rank][c]) if p is None else pow(rows[rank][c], -1, p)
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [(a - f * b) if p is None else (a - f * b) % p
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def fitting_support_oracle(R: Ring, matrix: Sequence[Sequence]) -> list[str]:
    """Min Supp(coker A) for A over Z or F_p, as rendered primes."""
    rows = len(matrix)
    if isinstance(R, PrimeField):
        return ["(0)"] if _rank_mod(matrix, R.p) < rows else []
    if R != INTEGERS:
        raise OracleUnavailable(f"support oracle works over Z or F_p, not {R.name}")
    if _rank_mod(matrix, None) < rows:
        return ["(0)"]
    bound = 1
    for r in matrix:
        bound *= isqrt(sum(int(a) ** 2 for a in r)) + 1
    return [f"({p})" for p in primerange(2, bound + 1) if _rank_mod(matrix, p) < rows]


# ---------------------------------------------------------------------------
# random corpora

@dataclass(frozen=True)
class CorpusSpec:
    """Bounds and seed for a random corpus; generation is a function of these alone."""

    ring: str = "Fp(5)"
    max_gens: int = 4
    max_degree: int = 6
    coeff_bound: int = 10
    seed: int = 0
    variables: tuple[str, ...] = ("x",)

    def __post_init__(self) -> None:
        if min(self.max_gens, self.max_degree, self.coeff_bound) <= 0:
            raise ValueError("corpus bounds must be positive")


def _rand_coeffs(rng: random.Random, deg: int, bound: int) -> list[int]:
    cs = [rng.randint(-bound, bound) for _ in range(deg + 1)]
    if deg >= 0 and cs[-1] == 0:
        cs[-1] = rng.choice([c for c in range(-bound, bound + 1) if c])
    return cs


def _imul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def random_field_ideal(spec: CorpusSpec, rng: random.Random) -> list[list[int]]:
    """Integer coefficient lists (lowest first), often sharing a common factor."""
    b = spec.coeff_bound
    ngens = rng.randint(1, spec.max_gens)
    for _ in range(200):
        common = [1]
        if rng.random() < 0.6:
            common = _rand_coeffs(rng, rng.randint(1, min(3, spec.max_degree)), 3)
        dc = len(common) - 1
        gens = []
        for _ in range(ngens):
            if rng.random() < 0.05:
                gens.append([0])
                continue
            d = rng.randint(0, spec.max_degree - dc)
            small = 3 if dc else b
            g = _imul(common, _rand_coeffs(rng, d, small))
            gens.append(g)
        if all(abs(c) <= b for g in gens for c in g):
            return gens
    return [_rand_coeffs(rng, rng.randint(0, spec.max_degree), b)]


def random_valuation_ideal(V: ValuationRing, spec: CorpusSpec, rng: random.Random,
                           var: str = "x") -> list[Poly]:
    """Generators over V[x] with monomial-fraction coefficients of value >= 0."""
    t = V.gens
    n = V.rank

    def coeff():
        if rng.random() < 0.25:
            return V.zero
        c = V.scalar(rng.choice([1, -1, 2, -2, 3]))
        for i in range(n):
            c *= t[i] ** rng.randint(0, 2 if i == 0 else 1)
        if rng.random() < 0.2:
            c = c / (1 + t[rng.randrange(n)])
        return c

    def linear():
        return Poly.make(V, var, [V.scalar(rng.choice([-1, 1, 2])), coeff() or t[rng.randrange(n)]])

    ngens = rng.randint(1, min(spec.max_gens, 3))
    out = []
    shared = linear() if rng.random() < 0.5 else None
    for _ in range(ngens):
        d = rng.randint(0, min(spec.max_degree, 2))
        f = Poly.make(V, var, [coeff() for _ in range(d + 1)])
        if f.is_zero:
            f = Poly.constant(V, var, t[rng.randrange(n)])
        if shared is not None:
            f = f * shared
        out.append(f)
    return out


@dataclass
class TrialRecord:
    index: int
    ideal: list[str]
    engine: list[str]
    oracle: list[str]
    agree: bool
    trace: dict | None = None


@dataclass
class CorpusReport:
    spec: dict
    trials: int
    agreements: int
    records: list[TrialRecord] = field(default_factory=list)
    note: str = ""

    @property
    def disagreements(self) -> list[TrialRecord]:
        return [r for r in self.records if not r.agree]

    def to_json(self) -> dict:
        return {
            "spec": self.spec,
            "trials": self.trials,
            "agreements": self.agreements,
            "note": self.note,
            "disagreements": [asdict(r) for r in self.disagreements],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def text(self) -> str:
        lines = [f"corpus {self.spec.get('ring')} seed={self.spec.get('seed')}: "
                 f"{self.agreements}/{self.trials} agree"]
        if self.note:
            lines.append(f"note: {self.note}")
        for r in self.disagreements:
            lines.append(f"  trial {r.index}: ideal={r.ideal} engine={r.engine} oracle={r.oracle}")
        return "\n".join(lines)


SHAPE_NOTE = ("candidate shapes justified by going-down: every minimal prime of V[x] "
              "contracts to a chain prime P_j and is P_j V[x] or given by an irreducible "
              "factor over Frac(V/P_j)")


def corpus_compare(spec: CorpusSpec, trials: int, solve: Callable | None = None,
                   jobs: int = 1) -> CorpusReport:
    """Run ``trials`` random ideals through ``solve`` and the applicable oracle.

    ``solve(R, gens) -> (primes, trace)`` defaults to the univariate engine; it
    is a parameter so that this module never imports the engine itself.
    """
    from .parser import parse_ring  # ring grammar only
    if solve is None:
        raise ValueError("corpus_compare needs the engine entry point as `solve`")
    R = parse_ring(spec.ring)
    rng = random.Random(spec.seed)
    var = spec.variables[0]
    cases = []
    for i in range(trials):
        if isinstance(R, ValuationRing):
            cases.append(random_valuation_ideal(R, spec, rng, var))
        else:
            raw = random_field_ideal(spec, rng)
            cases.append([Poly.make(R, var, [R.convert(c) for c in g]) for g in raw])

    def run(i: int) -> TrialRecord:
        gens = cases[i]
        primes, trace = solve(R, gens)
        if isinstance(R, ValuationRing):
            shapes = valuation_shape_oracle(R, gens)
            e, o = valuation_engine_set(R, primes), valuation_oracle_set(R, shapes)
            orend = sorted(f"(P{s.j}; {s.g})" if s.g else f"(P{s.j})" for s in shapes)
        else:
            e = univariate_engine_set(primes)
            o = gcd_factor_oracle(gens, R)
            orend = sorted(repr(v) for v in o)
        agree = e == o
        return TrialRecord(i, [g.render() for g in gens], [q.render() for q in primes], orend,
                           agree, None if agree else trace.to_json())

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run, range(trials)))
    else:
        records = [run(i) for i in range(trials)]
    records.sort(key=lambda r: r.index)
    note = SHAPE_NOTE if isinstance(R, ValuationRing) else "gcd over a PID, factored by brute force"
    return CorpusReport(asdict(spec), trials, sum(r.agree for r in records), records, note)
