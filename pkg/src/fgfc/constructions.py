"""Generators for the example objects: truncated families, glued algebras, Fitting ideals."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Any, Sequence

from .errors import RankExhaustedError, ShapeError
from .poly import Poly, PolynomialRing
from .rings.base import Ring
from .rings.valuation import ValuationRing, smallest_prime_containing


def alias(V: ValuationRing, i: int):
    """a_i = t_(i+1), an element of P_(i+1) outside P_i."""
    if not 0 <= i < V.rank:
        raise RankExhaustedError(f"a{i} needs rank at least {i + 1}, have {V.rank}")
    return V.gens[i]


def op_family(V: ValuationRing, k: int, var: str = "x") -> list[Poly]:
    """[f_0, ..., f_(k-1)] with f_i = a_i * prod_(j <= i) (a_j x - 1) in V[x]."""
    if k < 1:
        raise ValueError("the truncation parameter k must be at least 1")
    if k > V.rank:
        raise RankExhaustedError(f"op_family needs k <= rank ({k} > {V.rank})")
    one = Poly.constant(V, var, V.one)
    x = Poly.monomial(V, var, V.one, 1)
    out = []
    for i in range(k):
        f = Poly.constant(V, var, alias(V, i))
        for j in range(i + 1):
            f = f * (x.scale(alias(V, j)) - one)
        out.append(f)
    return out


def glued_algebra(R: Ring, gens: Sequence, var: str = "y") -> list[Poly]:
    """Generators {y f : f in I} and y^2 - y of the ideal defining R[y]/(yI, y^2 - y)."""
    y = Poly.monomial(R, var, R.one, 1)
    out = [y.scale(R.convert(f)) for f in gens if not R.is_zero(R.convert(f))]
    out.append(y * y - y)
    return out


@dataclass(frozen=True)
class PresentationMatrix:
    """M = coker(F^cols -> F^rows); relations are the columns."""

    base: Ring
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def of(cls, base: Ring, matrix: Sequence[Sequence]) -> "PresentationMatrix":
        rows = len(matrix)
        if rows == 0:
            raise ShapeError("a presentation needs at least one row (module generator)")
        cols = len(matrix[0])
        if any(len(r) != cols for r in matrix):
            raise ShapeError("ragged presentation matrix")
        entries = tuple(tuple(base.convert(a) for a in r) for r in matrix)
        return cls(base, rows, cols, entries)

    def column_minor(self, cols: Sequence[int]) -> Any:
        return determinant(self.base, [[self.entries[r][c] for c in cols]
                                       for r in range(self.rows)])


def determinant(R: Ring, m: Sequence[Sequence]) -> Any:
    """Leibniz expansion; fine for the 3x3 matrices used here."""
    n = len(m)
    total = R.zero
    for perm in permutations(range(n)):
        term = R.one
        for i, j in enumerate(perm):
            term = R.mul(term, m[i][j])
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        total = R.sub(total, term) if inversions % 2 else R.add(total, term)
    return total


def fitting_F0(P: PresentationMatrix) -> list:
    """Generators of the zeroth Fitting ideal: all rows x rows minors, or (0)."""
    if len(P.entries) != P.rows or any(len(r) != P.cols for r in P.entries):
        raise ShapeError("entry count does not match rows x cols")
    if P.cols < P.rows:
        return [P.base.zero]
    return [P.column_minor(cs) for cs in combinations(range(P.cols), P.rows)]


def prime_as_radical(V: ValuationRing, j: int):
    """An element whose radical is P_j: t_j, or the zero element for j = 0."""
    if not 0 <= j <= V.rank:
        raise RankExhaustedError(f"P{j} does not exist in rank {V.rank}")
    if j == 0:
        return V.zero
    a = V.gens[j - 1]
    assert smallest_prime_containing(V, a).value == j
    return a


def valuation_polynomial_ring(V: ValuationRing, var: str = "x") -> PolynomialRing:
    return PolynomialRing(V, var)
