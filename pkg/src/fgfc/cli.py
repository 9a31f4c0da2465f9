"""Command-line front end: ``fgfc --ring RING --ideal IDEAL [options]``.

Exit statuses:

====  ===========================================
0     success (including oracle "unavailable")
1     internal error
2     usage error (argument parsing)
3     parse error in the ring or ideal
4     capability error (missing oracle, rank exhausted)
5     ``--verify`` found a disagreement
====  ===========================================
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .engine import EngineContext, MultiResult, min_primes_multi, min_primes_univ
from .errors import CapabilityError, FGFCError, OracleUnavailable, ParseError, RankExhaustedError
from .oracle import (CorpusSpec, bivariate_certificate_oracle, corpus_compare, gcd_factor_oracle,
                     univariate_engine_set, valuation_engine_set, valuation_oracle_set,
                     valuation_shape_oracle)
from .parser import Problem, parse_problem, preset_problem, preset_ring
from .poly import Poly
from .primes import render_prime
from .rings.base import BasePrime
from .rings.integers import PrimeField, RationalField
from .rings.valuation import ValuationRing

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CAPABILITY = 4
EXIT_DISAGREE = 5

SCHEMA_VERSION = "1"


# ---------------------------------------------------------------------------
# verification

def verify(result: MultiResult) -> dict:
    """Run the oracle that applies to ``result``; the verdict is agree/disagree/unavailable."""
    R, used = result.ring, result.used
    try:
        if isinstance(R, (RationalField, PrimeField)) and len(used) <= 1:
            gens = result.gens if used else [Poly.constant(R, "x", c) for c in result.gens]
            oracle = gcd_factor_oracle(gens, R)
            if used:
                engine = univariate_engine_set(result.primes)
            else:
                engine = frozenset(("zero",) for _ in result.primes)
            return _verdict("gcd-factor", engine == oracle)
        if isinstance(R, ValuationRing) and len(used) == 1 and R.root is R:
            shapes = valuation_shape_oracle(R, result.gens)
            same = valuation_engine_set(R, result.primes) == valuation_oracle_set(R, shapes)
            return _verdict("valuation-shape", same)
        if isinstance(R, PrimeField) and len(used) == 2:
            cert = bivariate_certificate_oracle(result.primes, result.gens, R.p, used)
            return _verdict("bivariate-certificate", cert["agree"],
                            {k: v for k, v in cert.items() if k != "agree"})
    except OracleUnavailable as exc:
        return {"verdict": "unavailable", "oracle": None, "reason": str(exc)}
    return {"verdict": "unavailable", "oracle": None,
            "reason": f"no oracle for {R.name} in {len(used)} variable(s)"}


def _verdict(oracle: str, ok: bool, detail: dict | None = None) -> dict:
    out = {"verdict": "agree" if ok else "disagree", "oracle": oracle}
    if detail:
        out["detail"] = detail
    return out


# ---------------------------------------------------------------------------
# output

def prime_json(q) -> dict:
    if isinstance(q, BasePrime):
        return {"base": q.render(), "polys": [], "text": render_prime(q)}
    return {"base": q.base_prime.render(), "polys": [p.render() for p in q.polypart()],
            "text": q.render()}


def result_json(problem: Problem, result: MultiResult, trace: bool, verdict: dict | None) -> dict:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "ring": problem.ring.name,
        "variables": list(problem.variables),
        "ideal": list(problem.text),
        "minimal_primes": [prime_json(q) for q in result.primes],
    }
    if trace and result.trace is not None:
        out["trace"] = result.trace.to_json()
    if verdict is not None:
        out["verified"] = verdict
    return out


def result_text(problem: Problem, result: MultiResult, trace: bool, verdict: dict | None) -> str:
    lines = [render_prime(q) for q in result.primes]
    if trace and result.trace is not None:
        lines.append("# trace")
        lines.append(result.trace.render())
    if verdict is not None:
        why = verdict.get("reason") or verdict.get("oracle")
        lines.append(f"# verified: {verdict['verdict']} ({why})")
    return "\n".join(lines)


def error_json(kind: str, reason: str, message: str, **extra: Any) -> dict:
    err = {"kind": kind, "reason": reason, "message": message}
    err.update(extra)
    return {"schema_version": SCHEMA_VERSION, "error": err}


# ---------------------------------------------------------------------------
# commands

def run_problem(problem: Problem, *, fmt: str = "text", trace: bool = False,
                check: bool = False) -> tuple[int, str]:
    result = min_primes_multi(problem.ring, problem.variables, problem.ideal,
                              EngineContext())
    verdict = verify(result) if check else None
    status = EXIT_DISAGREE if verdict and verdict["verdict"] == "disagree" else EXIT_OK
    if fmt == "json":
        return status, json.dumps(result_json(problem, result, trace, verdict), indent=2)
    return status, result_text(problem, result, trace, verdict)


def run_sweep(ring_spec: str | None, problem: Problem, limit: int, *, fmt: str = "text",
              check: bool = False) -> tuple[int, str]:
    """Truncation sweep k = 1..limit of a preset; emits the count sequence."""
    name, rank, _ = problem.preset
    V = preset_ring(ring_spec, rank, name)
    status = EXIT_OK
    rows = []
    for k in range(1, limit + 1):
        vs, ideal = preset_problem(name, V, k)
        result = min_primes_multi(V, vs, ideal, EngineContext())
        row: dict[str, Any] = {"k": k, "count": len(result.primes),
                               "minimal_primes": [prime_json(q) for q in result.primes]}
        if check:
            row["verified"] = verify(result)
            if row["verified"]["verdict"] == "disagree":
                status = EXIT_DISAGREE
        rows.append(row)
    counts = [r["count"] for r in rows]
    if fmt == "json":
        out = {"schema_version": SCHEMA_VERSION, "ring": V.name,
               "preset": {"name": name, "rank": rank, "limit": limit},
               "counts": counts, "sweep": rows}
        return status, json.dumps(out, indent=2)
    lines = [f"preset:{name}({rank},k) over {V.name}"]
    for r in rows:
        lines.append(f"k={r['k']}: {r['count']} minimal primes")
        lines.extend(f"  {p['text']}" for p in r["minimal_primes"])
        if "verified" in r:
            lines.append(f"  # verified: {r['verified']['verdict']}")
    lines.append("counts: " + " ".join(str(c) for c in counts))
    return status, "\n".join(lines)


def run_corpus(ring_spec: str, trials: int, seed: int, jobs: int, fmt: str) -> tuple[int, str]:
    spec = CorpusSpec(ring=ring_spec, seed=seed)
    report = corpus_compare(spec, trials, solve=min_primes_univ, jobs=jobs)
    status = EXIT_OK if not report.disagreements else EXIT_DISAGREE
    return status, report.dumps() if fmt == "json" else report.text()


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fgfc",
        description="Minimal primes of finitely generated ideals in polynomial rings.")
    ap.add_argument("--ring", help="Q | Fp(p) | Z | Zmod(n) | Val(rank=r, base=Q|Fp(p))")
    ap.add_argument("--ideal", help="';'-separated polynomials, or preset:opex(r,k) / preset:glued(r,k)")
    ap.add_argument("--vars", help="comma-separated variable order (default: x / x1..xm found in the ideal)")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--trace", action="store_true", help="include the decomposition trace")
    ap.add_argument("--verify", action="store_true", help="check the answer with an independent oracle")
    ap.add_argument("--limit", type=int, metavar="N", help="with a preset: sweep k = 1..N")
    ap.add_argument("--trials", type=int, metavar="T",
                    help="with --verify and no --ideal: compare T random ideals against the oracle")
    ap.add_argument("--seed", type=int, default=0, metavar="S", help="corpus seed")
    ap.add_argument("--jobs", type=int, default=1, metavar="J", help="parallel verification trials")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        if args.ideal is None:
            if args.trials is None or not args.verify:
                print("fgfc: --ideal is required unless running --verify --trials T",
                      file=sys.stderr)
                return EXIT_USAGE
            status, out = run_corpus(args.ring or "Fp(5)", args.trials, args.seed, args.jobs, fmt)
        else:
            variables = [v.strip() for v in args.vars.split(",") if v.strip()] if args.vars else None
            problem = parse_problem(args.ring, args.ideal, variables)
            if args.limit is not None:
                if problem.preset is None:
                    print("fgfc: --limit needs a preset ideal", file=sys.stderr)
                    return EXIT_USAGE
                status, out = run_sweep(args.ring, problem, args.limit, fmt=fmt, check=args.verify)
            else:
                status, out = run_problem(problem, fmt=fmt, trace=args.trace, check=args.verify)
    except ParseError as exc:
        return _fail(fmt, EXIT_PARSE, error_json("parse", "syntax", str(exc), line=exc.line,
                                                 column=exc.column, expected=list(exc.expected)))
    except RankExhaustedError as exc:
        return _fail(fmt, EXIT_CAPABILITY, error_json("capability", "rank-exhausted", str(exc)))
    except CapabilityError as exc:
        return _fail(fmt, EXIT_CAPABILITY, error_json("capability", exc.capability, str(exc),
                                                      path=list(exc.path)))
    except FGFCError as exc:
        return _fail(fmt, EXIT_INTERNAL, error_json("internal", type(exc).__name__, str(exc)))
    if out:
        print(out)
    return status


def _fail(fmt: str, status: int, payload: dict) -> int:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"fgfc: error: {payload['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
