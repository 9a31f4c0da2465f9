"""Elements of Z^n under lexicographic order, plus a top element for v(0)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class ValueVector:
    """A value of the lex monomial valuation; ``coords is None`` means Infinity."""

    coords: tuple[int, ...] | None

    @classmethod
    def infinity(cls) -> "ValueVector":
        return cls(None)

    @classmethod
    def zero(cls, n: int) -> "ValueVector":
        return cls((0,) * n)

    @property
    def is_infinite(self) -> bool:
        return self.coords is None

    def __lt__(self, other: "ValueVector") -> bool:
        if self.coords is None:
            return False
        if other.coords is None:
            return True
        return self.coords < other.coords

    def __add__(self, other: "ValueVector") -> "ValueVector":
        if self.coords is None or other.coords is None:
            return ValueVector(None)
        return ValueVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ValueVector") -> "ValueVector":
        if other.coords is None:
            raise ValueError("cannot subtract the value of zero")
        if self.coords is None:
            return self
        return ValueVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def prefix(self, j: int) -> tuple[int, ...] | None:
        """First ``j`` coordinates, the image in Z^n / (0^j x Z^(n-j))."""
        return None if self.coords is None else self.coords[:j]

    def exceeds_subgroup(self, j: int) -> bool:
        """True iff this value is above every element of 0^j x Z^(n-j).

        For nonnegative values this is exactly membership in the chain prime P_j.
        """
        if self.coords is None:
            return True
        return self.coords[:j] > (0,) * j

    def __str__(self) -> str:
        if self.coords is None:
            return "Infinity"
        return "(" + ", ".join(str(c) for c in self.coords) + ")"
