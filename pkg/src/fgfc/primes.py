"""Primes of polynomial rings over the supported base rings.

A :class:`PrimeRep` of ``T[x]`` is a pair (q, g): ``q`` a prime of ``T`` and
``g`` either None or a monic irreducible polynomial over the residue field
K_q.  It stands for the ideal of all h whose reduction modulo q is divisible by
g in K_q[x] (or vanishes, when g is None).  For nested polynomial rings ``q`` is
itself a PrimeRep, which gives the triangular shape (base prime; g1, g2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import CapabilityError, FGFCError
from .fields import (AlgebraicExtension, Field, PrimeFieldGF, RationalFunctionField,
                     RationalNumbers, peval, pkey, prem, ptrim)
from .poly import Poly, PolynomialRing, render_terms
from .rings.base import BasePrime, Ring


class _Scalars(Ring):
    """Render-only view of a residue field, for printing K-coefficient polynomials."""

    def __init__(self, K: Field) -> None:
        self.K = K
        self.name = K.name

    @property
    def zero(self):
        return self.K.zero

    def is_zero(self, a) -> bool:
        return self.K.is_zero(a)

    def render(self, a) -> str:
        return self.K.render(a)


@dataclass(frozen=True, eq=False)
class PrimeRep:
    """The prime (base; g) of ``ring = T[var]``; see the module docstring."""

    base: Any  # BasePrime or PrimeRep
    g: tuple | None
    var: str
    ring: PolynomialRing | None = field(default=None, compare=False)
    provenance: tuple = field(default=(), compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    # -- residue field ---------------------------------------------------
    def base_field(self) -> Field:
        return self.base.residue_field()

    def residue_field(self) -> Field:
        if "K" in self._cache:
            return self._cache["K"]
        Kb = self.base_field()
        if self.g is None:
            K = function_field(Kb, self.var)
        elif len(self.g) == 2:
            K = Kb
        else:
            K = AlgebraicExtension(Kb, list(self.g), name=self.var)
        self._cache["K"] = K
        return K

    def reduce_coeffs(self, h: Poly, R: Ring | None = None) -> list:
        """Coefficients of h reduced modulo the base prime, as a list over K_base."""
        Kb = self.base_field()
        if R is None:
            out = [self.base.residue(c) for c in h.coeffs]
        else:
            out = [R.residue(self.base, c) for c in h.coeffs]
        return ptrim(Kb, out)

    def residue(self, h: Poly):
        """Image of h in K = Frac(T[x] / this prime)."""
        Kb = self.base_field()
        hb = self.reduce_coeffs(h)
        K = self.residue_field()
        if self.g is None:
            return _to_function_field(Kb, K, hb, self.var)
        if len(self.g) == 2:
            root = Kb.neg(self.g[0])
            return peval(Kb, hb, root)
        return K.reduce(hb)

    def contains(self, h: Poly, R: Ring | None = None) -> bool:
        hb = self.reduce_coeffs(h, R)
        if not hb:
            return True
        if self.g is None:
            return False
        return not prem(self.base_field(), hb, list(self.g))

    def lift(self, kappa) -> tuple[Poly, Poly]:
        """(num, den) in T[x], den outside this prime, with num/den mapping to kappa."""
        T = self.ring
        Kb = self.base_field()
        if self.g is not None and len(self.g) == 2:
            n, d = self.base.lift(kappa)
            return T.convert(n), T.convert(d)
        if self.g is None:
            K = self.residue_field()
            num = _split_function(Kb, K, kappa.numer, self.var)
            den = _split_function(Kb, K, kappa.denom, self.var)
            Pn, dn = self._lift_coeffs(num)
            Pd, dd = self._lift_coeffs(den)
            return Pn * T.convert(dd), Pd * T.convert(dn)
        P, d = self._lift_coeffs(list(kappa))
        return P, T.convert(d)

    def _lift_coeffs(self, cs: Sequence) -> tuple[Poly, Any]:
        """Poly P over the base and a base element d with P/d lifting ``cs``."""
        B = self.ring.base
        pairs = [self.base.lift(c) for c in cs]
        den = B.one
        for _, d in pairs:
            if not B.is_one(d):
                den = B.mul(den, d)
        coeffs = []
        for i, (n, _) in enumerate(pairs):
            term = n
            for j, (_, d) in enumerate(pairs):
                if j != i and not B.is_one(d):
                    term = B.mul(term, d)
            coeffs.append(term)
        return Poly.make(B, self.var, coeffs), den

    # -- generators ------------------------------------------------------
    def generator(self) -> Poly | None:
        """Primitive lift of g to T[x] (None for an extended prime)."""
        if self.g is None:
            return None
        if "gen" not in self._cache:
            P, _ = self._lift_coeffs(list(self.g))
            B = self.ring.base
            coeffs = B.content_normalize(list(P.coeffs))
            self._cache["gen"] = Poly.make(B, self.var, coeffs)
        return self._cache["gen"]

    def polypart(self) -> list[Poly]:
        out = list(self.base.polypart())
        if self.g is not None:
            out.append(self.generator())
        return out

    @property
    def base_prime(self) -> BasePrime:
        return self.base.base_prime

    def key(self) -> tuple:
        gk = None if self.g is None else pkey(self.base_field(), list(self.g))
        return ("P", self.var, self.base.key(), gk)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeRep) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(repr(self.key()))

    def render(self) -> str:
        polys = [p.render() for p in self.polypart()]
        bp = self.base_prime
        head = bp.render()
        if not polys:
            return f"({head})"
        if bp.zero_prime_of_root():
            return "(" + ", ".join(polys) + ")"
        return f"({head}; " + ", ".join(polys) + ")"

    def render_g(self) -> str:
        if self.g is None:
            return ""
        return render_terms(_Scalars(self.base_field()), self.var, self.g)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PrimeRep{self.render()}"

    def with_provenance(self, path: tuple) -> "PrimeRep":
        return PrimeRep(self.base, self.g, self.var, self.ring, path, self._cache)


# ---------------------------------------------------------------------------
# residue fields of extended primes

def function_field(Kb: Field, var: str) -> RationalFunctionField:
    if isinstance(Kb, RationalNumbers):
        return RationalFunctionField(0, (var,))
    if isinstance(Kb, PrimeFieldGF):
        return RationalFunctionField(Kb.characteristic, (var,))
    if isinstance(Kb, RationalFunctionField):
        return RationalFunctionField(Kb.characteristic, Kb.names + (var,))
    raise CapabilityError("residue-field", f"no function field over {Kb.name} in {var}")


def _embed(Kb: Field, K: RationalFunctionField, c):
    if isinstance(Kb, RationalFunctionField):
        def up(p):
            return K.ring.from_dict({m + (0,): v for m, v in p.terms()})
        return K.K(up(c.numer)) / K.K(up(c.denom))
    return K.from_scalar(c)


def _to_function_field(Kb: Field, K: RationalFunctionField, cs: Sequence, var: str):
    out = K.zero
    x = K.variable(var)
    for e in range(len(cs) - 1, -1, -1):
        out = out * x + _embed(Kb, K, cs[e])
    return out


def _split_function(Kb: Field, K: RationalFunctionField, p, var: str) -> list:
    """A polynomial over K's ring as a coefficient list over Kb (in ``var``)."""
    groups: dict[int, dict] = {}
    for m, c in p.terms():
        groups.setdefault(m[-1], {})[m[:-1]] = c
    top = max(groups) if groups else -1
    out = []
    for e in range(top + 1):
        terms = groups.get(e, {})
        if isinstance(Kb, RationalFunctionField):
            out.append(Kb.K(Kb.ring.from_dict(terms)) if terms else Kb.zero)
        else:
            c = terms.get((), None)
            out.append(Kb.zero if c is None else K.scalar_out(c))
    return out


# ---------------------------------------------------------------------------
# containment

def prime_le(P, Q) -> bool:
    """P ⊆ Q for two primes of the same ring."""
    if isinstance(P, BasePrime):
        return P.ring.prime_le(P, Q)
    return prime_contains(Q, P)


def prime_contains(Q1, Q2) -> bool:
    """True iff Q2 ⊆ Q1."""
    if isinstance(Q1, BasePrime):
        return Q1.ring.prime_le(Q2, Q1)
    if not prime_le(Q2.base, Q1.base):
        return False
    if Q2.g is None:
        return True
    if Q1.base.key() == Q2.base.key():
        return Q1.g is not None and Q1.key() == Q2.key()
    return Q1.contains(Q2.generator())


def ideal_in_prime(G: Iterable, Q, R: Ring | None = None) -> bool:
    """Every generator of G lies in Q (G over ``R``, default the root)."""
    gens = G.gens if hasattr(G, "gens") else G
    if isinstance(Q, BasePrime):
        ring = R or Q.ring
        return all(ring.contains(Q, a) for a in gens)
    return all(Q.contains(h, R) for h in gens)


def minimal_filter(cands: Iterable, I: Iterable | None = None, R: Ring | None = None) -> list:
    """Deduplicate, then keep the candidates containing no other candidate."""
    uniq: dict = {}
    for q in cands:
        uniq.setdefault(q.key(), q)
    qs = list(uniq.values())
    if I is not None:
        for q in qs:
            if not ideal_in_prime(I, q, R):
                raise FGFCError(f"candidate {q.render()} does not contain the ideal")
    out = []
    for i, q in enumerate(qs):
        if not any(j != i and prime_contains(q, other) for j, other in enumerate(qs)):
            out.append(q)
    return sorted(out, key=canonical_key)


def contract_from_localization(Q, c, R: Ring | None = None):
    """Contraction of a prime of R_c[x] to R[x].

    Primes are stored as primes of the root ring avoiding the inverted
    elements, so contraction keeps the representation; it checks that the
    prime avoids ``c`` and returns it.  Rendering clears denominators.
    """
    base = Q.base if isinstance(Q, PrimeRep) else Q
    contains = (R.contains(base, c) if R is not None else base.contains(c))
    if contains:
        raise FGFCError(f"{Q.render()} contains the inverted element")
    return Q


def canonical_key(q) -> tuple:
    bp = q.base_prime
    return (bp.kind, str(bp.value) if bp.value is not None else "", render_prime(q))


def render_prime(q) -> str:
    """Canonical text of a prime of either shape."""
    return str(q) if isinstance(q, BasePrime) else q.render()


def prime_depth(q) -> int:
    return 0 if isinstance(q, BasePrime) else 1 + prime_depth(q.base)
