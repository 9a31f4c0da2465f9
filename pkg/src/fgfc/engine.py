"""Minimal primes of finitely generated ideals of R[x], by recursive case split.

For I = (f_1, ..., f_n) with f_n of least positive degree and c = lc(f_n):

* Branch A: the primes containing c are those minimal over
  I' = (f_1, ..., f_{n-1}, f_n - c x^d, c), whose degree measure is smaller;
* Branch B: the primes avoiding c are the primes of R_c[x], where f_n is monic.
  If another generator has positive degree, reduce it by f_n (Case 1) and
  recurse; otherwise every other generator is a constant (Case 2), and the
  primes of (R_c / those constants)[x] over f_n lie over minimal primes of the
  base by going-down, one per irreducible factor over each residue field.

The merged candidates are filtered to the minimal ones.  The degree-zero case
asks the base ring directly.  Several variables are handled by treating
R[x1..x_{m-1}] as the base of R[x1..xm].
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CapabilityError, FGFCError
from .factor import DEFAULT_ORACLE, FactorizationOracle, irreducible_factors
from .fields import prender
from .poly import (GenList, Poly, PolynomialRing, measure, nest, normalize,
                   reduce_by_monic, tower)
from .primes import (PrimeRep, canonical_key, contract_from_localization,
                     minimal_filter, render_prime)
from .rings.base import Ring


@dataclass
class DecompTrace:
    """One node of the decomposition tree.

    ``kind`` is one of ``root``, ``d0``, ``quotient``, ``localize`` and
    ``monic``; ``measure`` is the degree measure of the normalized generator
    list carried into the subtree.  Engine runs over an inner polynomial ring
    (minimal primes of a base that is itself a polynomial ring) hang off
    ``subtraces``.
    """

    kind: str
    ring: str
    var: str
    gens: list[str]
    measure: int
    detail: dict = field(default_factory=dict)
    children: list["DecompTrace"] = field(default_factory=list)
    leaves: list[str] = field(default_factory=list)
    subtraces: list["DecompTrace"] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "ring": self.ring, "var": self.var,
                     "gens": list(self.gens), "measure": self.measure}
        if self.detail:
            out["detail"] = dict(self.detail)
        out["children"] = [c.to_json() for c in self.children]
        out["leaves"] = list(self.leaves)
        if self.subtraces:
            out["subtraces"] = [s.to_json() for s in self.subtraces]
        return out

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def depth(self) -> int:
        """Number of quotient/localize edges on the longest root-to-leaf path."""
        below = max((c.depth() for c in self.children), default=0)
        return below + (1 if self.kind in ("quotient", "localize") else 0)

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        info = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        line = f"{pad}{self.kind} [{self.ring}] d={self.measure} gens={self.gens}"
        if info:
            line += f" {info}"
        if self.leaves:
            line += f" -> {', '.join(self.leaves)}"
        lines = [line]
        for c in self.children:
            lines.append(c.render(indent + 1))
        for s in self.subtraces:
            lines.append(f"{pad}  inner:")
            lines.append(s.render(indent + 2))
        return "\n".join(lines)


@dataclass
class EngineContext:
    """Per-invocation state: factorization oracle, memo table and trace sink."""

    oracle: FactorizationOracle = DEFAULT_ORACLE
    record: bool = True
    cache: dict = field(default_factory=dict)
    subtraces: list = field(default_factory=list)
    nodes: int = 0
    deadline: float | None = None

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise FGFCError("engine time budget exhausted")


class MeasureViolation(FGFCError):
    """A branch failed to lower the degree measure (an engine bug)."""


# ---------------------------------------------------------------------------
# univariate engine

def min_primes_univ(R: Ring, gens: Sequence[Poly] | GenList, ctx: EngineContext | None = None,
                    var: str | None = None) -> tuple[list[PrimeRep], DecompTrace]:
    """Min(R[x]/I) and the decomposition trace."""
    ctx = ctx or EngineContext()
    if isinstance(gens, GenList):
        var = gens.var
        gens = list(gens.gens)
    gens = list(gens)
    if var is None:
        if not gens:
            raise ValueError("the variable name is needed for an empty generator list")
        var = gens[0].var
    T = PolynomialRing(R.root, var)
    gens = [g.change_ring(R) if g.ring is not R else g for g in gens]
    trace = DecompTrace("root", R.describe(), var, [g.render() for g in gens], 0)
    primes = _solve(R, T, gens, var, ctx, trace, ())
    return primes, trace


def min_primes_univ_cached(T: PolynomialRing, gens: Sequence[Poly], ctx: EngineContext
                           ) -> list[PrimeRep]:
    """Min primes of the root polynomial ring T over ``gens``; memoized per context."""
    key = (T.name, tuple(sorted(repr(g.key()) for g in gens if not g.is_zero)))
    if key in ctx.cache:
        return ctx.cache[key]
    primes, trace = min_primes_univ(T.base, list(gens), ctx, var=T.var)
    primes = [PrimeRep(q.base, q.g, q.var, T, q.provenance, q._cache) for q in primes]
    if ctx.record:
        ctx.subtraces.append(trace)
    ctx.cache[key] = primes
    return primes


def _solve(R: Ring, T: PolynomialRing, gens: list[Poly], var: str, ctx: EngineContext,
           node: DecompTrace, path: tuple) -> list[PrimeRep]:
    ctx.tick()
    if R.is_zero_ring():
        node.detail["zero_ring"] = True
        return []
    gens = normalize(gens)
    m = measure(gens)
    node.measure = m
    mark = len(ctx.subtraces)
    try:
        if m == 0:
            out = _degree_zero(R, T, gens, var, ctx, node, path)
        else:
            out = _split(R, T, gens, var, ctx, node, path, m)
    except CapabilityError as exc:
        raise exc.with_path(path) if not exc.path else exc
    node.subtraces.extend(ctx.subtraces[mark:])
    del ctx.subtraces[mark:]
    return out


def _degree_zero(R, T, gens, var, ctx, node, path) -> list[PrimeRep]:
    consts = [g.coeffs[0] for g in gens]
    child = DecompTrace("d0", R.describe(), var, [R.render(c) for c in consts], 0)
    node.children.append(child)
    mark = len(ctx.subtraces)
    base = R.min_primes(consts, ctx)
    child.subtraces.extend(ctx.subtraces[mark:])
    del ctx.subtraces[mark:]
    out = [PrimeRep(q, None, var, T, path + ("d0",)) for q in base]
    child.leaves = [q.render() for q in out]
    return out


def branch_quotient(gens: Sequence[Poly], fn: Poly, c) -> list[Poly]:
    """(f_1, ..., f_{n-1}, f_n - c x^d, c)."""
    idx = next(i for i, g in enumerate(gens) if g is fn)
    rest = [g for i, g in enumerate(gens) if i != idx]
    return rest + [fn.without_top(), Poly.constant(fn.ring, fn.var, c)]


def _split(R, T, gens, var, ctx, node, path, m) -> list[PrimeRep]:
    d = min(g.deg for g in gens if g.deg > 0)
    idx = next(i for i, g in enumerate(gens) if g.deg == d)
    fn = gens[idx]
    c = fn.lc
    c_txt = R.render(c)
    cands: list[PrimeRep] = []
    cinv = R.unit_inverse(c)

    # Branch A: primes containing c
    if cinv is None:
        I1 = branch_quotient(gens, fn, c)
        m1 = measure(normalize(I1))
        child = DecompTrace("quotient", R.describe(), var, [g.render() for g in I1], m1,
                            {"c": c_txt})
        node.children.append(child)
        if m1 >= m:
            raise MeasureViolation(f"quotient branch did not lower the measure ({m} -> {m1})")
        cands += _solve(R, T, I1, var, ctx, child, path + ("quotient",))
    else:
        node.detail["unit_lc"] = c_txt

    # Branch B: primes avoiding c
    Rc = R if cinv is not None else R.localize(c)
    if Rc.is_zero_ring():
        node.children.append(DecompTrace("localize", Rc.describe(), var, [], 0,
                                         {"c": c_txt, "case": "zero-ring"}))
        return minimal_filter(cands, gens, R)
    inv = Rc.unit_inverse(Rc.convert(c))
    if inv is None:
        raise FGFCError(f"{c_txt} is not invertible after localizing at it")
    lifted = [g.change_ring(Rc) if Rc is not R else g for g in gens]
    fn_c = lifted[idx].scale(inv)
    fn_c = Poly.make(Rc, var, list(fn_c.coeffs[:-1]) + [Rc.one])
    others = [g for i, g in enumerate(lifted) if i != idx]
    bpath = path + ("localize",)
    positive = [i for i, g in enumerate(others) if g.deg > 0]
    if positive:
        j = positive[0]
        if others[j].deg < d:
            raise FGFCError("generator of positive degree below the chosen minimum")
        reduced = list(others)
        reduced[j] = reduce_by_monic(others[j], fn_c)
        I2 = reduced + [fn_c]
        m2 = measure(normalize(I2))
        child = DecompTrace("localize", Rc.describe(), var, [g.render() for g in I2], m2,
                            {"c": c_txt, "case": "reduce"})
        node.children.append(child)
        if m2 >= m:
            raise MeasureViolation(f"reduce branch did not lower the measure ({m} -> {m2})")
        found = _solve(Rc, T, I2, var, ctx, child, bpath)
    else:
        consts = [g.coeffs[0] for g in others]
        child = DecompTrace("localize", Rc.describe(), var,
                            [Rc.render(k) for k in consts] + [fn_c.render()], m,
                            {"c": c_txt, "case": "monic"})
        node.children.append(child)
        Rq = Rc.quotient(consts) if consts else Rc
        if Rq.is_zero_ring():
            child.detail["zero_ring"] = True
            found = []
        else:
            f = fn_c.change_ring(Rq) if Rq is not Rc else fn_c
            found = monic_case(Rq, f, ctx, child, T, bpath)
    for q in found:
        cands.append(contract_from_localization(q, c, R))
    return minimal_filter(cands, gens, R)


def monic_case(R: Ring, f: Poly, ctx: EngineContext | None = None,
               node: DecompTrace | None = None, T: PolynomialRing | None = None,
               path: tuple = ()) -> list[PrimeRep]:
    """Min(R[x]/(f)) for monic f: one prime per irreducible factor over each K_p."""
    ctx = ctx or EngineContext()
    if not f.is_monic() or f.deg < 1:
        raise FGFCError("the monic case needs a monic polynomial of positive degree")
    T = T or PolynomialRing(R.root, f.var)
    mark = len(ctx.subtraces)
    base = R.min_primes([], ctx)
    out: list[PrimeRep] = []
    split: list[str] = []
    for q in base:
        K = q.residue_field()
        fbar = [R.residue(q, a) for a in f.coeffs]
        try:
            facs = irreducible_factors(K, fbar, ctx.oracle)
        except CapabilityError as exc:
            raise exc.with_path(path + ("monic",)) if not exc.path else exc
        split.append(f"{q.render()}: " + ", ".join(prender(K, g, f.var) for g in facs))
        for g in facs:
            out.append(PrimeRep(q, tuple(g), f.var, T, path + ("monic",)))
    if node is not None:
        leaf = DecompTrace("monic", R.describe(), f.var, [f.render()], f.deg,
                           {"factors": split})
        leaf.subtraces.extend(ctx.subtraces[mark:])
        del ctx.subtraces[mark:]
        leaf.leaves = [q.render() for q in out]
        node.children.append(leaf)
    return out


# ---------------------------------------------------------------------------
# several variables

@dataclass
class MultiResult:
    """Minimal primes over R[x1..xm] with the data needed to check them."""

    ring: Ring
    declared: tuple[str, ...]
    used: tuple[str, ...]
    primes: list
    gens: list
    base: Ring
    trace: DecompTrace | None

    def rendered(self) -> list[str]:
        return [render_prime(q) for q in self.primes]


def build_problem_ring(R: Ring, used: Sequence[str]) -> tuple[Ring, list[Ring]]:
    """The base ring for the outermost variable, and the tower of root rings."""
    rings = tower(R, used)
    if not used:
        return R, rings
    inner = rings[len(used) - 1]
    if len(used) == 1:
        return R, rings
    if R.modulus:
        consts = [inner.convert(m) for m in R.modulus]
        return inner.quotient(consts), rings
    return inner, rings


def min_primes_multi(R: Ring, variables: Sequence[str], terms_list: Sequence[dict],
                     ctx: EngineContext | None = None) -> MultiResult:
    """Min primes of the ideal generated by sparse polynomials over R[variables].

    Each generator is ``{exponent tuple over variables: coefficient}``.  Only
    variables that occur are used; unused ones extend the primes freely.
    """
    ctx = ctx or EngineContext()
    variables = tuple(variables)
    occurring = [any(m[i] for t in terms_list for m, c in t.items() if not _is_zero_coeff(R, c))
                 for i in range(len(variables))]
    used = tuple(v for v, o in zip(variables, occurring) if o)
    keep = [i for i, o in enumerate(occurring) if o]
    B, rings = build_problem_ring(R, used)
    restricted = []
    for t in terms_list:
        r: dict = {}
        for mono, c in t.items():
            mm = tuple(mono[i] for i in keep)
            r[mm] = R.root.add(r[mm], c) if mm in r else c
        restricted.append(r)
    if not used:
        consts = [B.convert(nest(t, (), rings)) for t in restricted]
        primes = sorted(R.min_primes(consts, ctx), key=canonical_key)
        return MultiResult(R, variables, used, primes, consts, R, None)
    polys = [nest(t, used, rings) for t in restricted]
    polys = [p.change_ring(B) for p in polys]
    primes, trace = min_primes_univ(B, polys, ctx, var=used[-1])
    T = rings[len(used)]
    primes = [PrimeRep(q.base, q.g, q.var, T, q.provenance, q._cache) for q in primes]
    if ctx.subtraces:
        trace.subtraces.extend(ctx.subtraces)
        ctx.subtraces.clear()
    return MultiResult(R, variables, used, sorted(primes, key=canonical_key), polys, B, trace)


def _is_zero_coeff(R: Ring, c) -> bool:
    try:
        return R.root.is_zero(c)
    except Exception:
        return False
