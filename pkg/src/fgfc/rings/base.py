"""The base-ring contract the engine relies on.

Every ring the engine meets is ``T_s / J``: a root ring ``T`` (one of the
concrete domains, ``Z``, or a polynomial ring over one of those) localized at
a product ``s`` of finitely many elements and divided by a finitely generated
ideal ``J``.  Primes of such a ring are stored as the corresponding primes of
``T`` (those containing ``J`` and avoiding ``s``), so contraction back to the
root is free and residue fields never change along the recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from ..errors import CapabilityError, RingError
from ..fields import Field


class Ring:
    """Abstract commutative ring with the oracles the engine needs."""

    name: str = "?"
    root: "Ring"
    inverted: tuple = ()
    modulus: tuple = ()
    depth: int = 0
    is_field: bool = False

    # -- arithmetic -------------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        return self.sub(self.zero, a)

    def from_int(self, n: int):
        raise NotImplementedError

    def convert(self, a):
        """Accept a representative coming from any ring with the same root."""
        return a

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def is_one(self, a) -> bool:
        return self.eq(a, self.one)

    def unit_inverse(self, a):
        """Inverse of ``a`` when it is cheaply recognisable as a unit, else None."""
        return None

    def pow(self, a, e: int):
        result = self.one
        for _ in range(e):
            result = self.mul(result, a)
        return result

    def key(self, a):
        return a

    def render(self, a) -> str:
        return str(a)

    def content_normalize(self, coeffs: list) -> list:
        """Divide a coefficient list by its content when the ring knows how."""
        return coeffs

    # -- structure --------------------------------------------------------
    def is_zero_ring(self) -> bool:
        return False

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        """Minimal primes over ``gens``, as primes of the root ring."""
        raise CapabilityError("min-primes", f"no minimal-prime oracle for {self.name}")

    def residue(self, q, a):
        """Image of ``a`` in the residue field of ``q`` (a prime avoiding s)."""
        raise CapabilityError("residue", f"no residue map for {self.name}")

    def contains(self, q, a) -> bool:
        K = q.residue_field()
        return K.is_zero(self.residue(q, a))

    def localize(self, c) -> "Ring":
        raise CapabilityError("localization", f"cannot localize {self.name}")

    def quotient(self, gens: Sequence) -> "Ring":
        raise CapabilityError("quotient", f"cannot form quotients of {self.name}")

    def embed_root(self, t):
        """Image of a root-ring element."""
        return self.convert(t)

    def describe(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return self.describe()


class ZeroRing(Ring):
    """The zero ring: what remains after dividing by the unit ideal."""

    def __init__(self, parent: Ring, why: str) -> None:
        self.root = parent.root
        self.inverted = parent.inverted
        self.modulus = parent.modulus
        self.depth = parent.depth + 1
        self.name = f"ZeroRing({why})"
        self.parent = parent

    def is_zero_ring(self) -> bool:
        return True

    def min_primes(self, gens: Sequence, ctx: Any = None) -> list:
        return []

    def _no_arith(self, *args):
        raise RingError("no arithmetic is offered on the zero ring")

    zero = property(_no_arith)
    one = property(_no_arith)
    add = sub = mul = neg = from_int = convert = is_zero = _no_arith

    def localize(self, c) -> Ring:
        return self

    def quotient(self, gens: Sequence) -> Ring:
        return self


@dataclass(frozen=True)
class BasePrime:
    """A prime of one of the concrete root rings.

    ``kind`` is one of ``"zero"``, ``"principal"`` (a prime integer), or
    ``"chain"`` (the chain prime P_j of a valuation domain, ``value = j``).
    The rendering of a principal prime of ``Z/n`` is the same as over ``Z``.
    """

    ring: Ring = field(compare=False, hash=False)
    kind: str
    value: Any = None

    def residue_field(self) -> Field:
        return self.ring.prime_residue_field(self)

    def residue(self, a):
        return self.ring.residue(self, a)

    def contains(self, a) -> bool:
        return self.ring.contains(self, a)

    def lift(self, kappa):
        """(num, den) in the root ring with den outside the prime, mapping to kappa."""
        return self.ring.prime_lift(self, kappa)

    def le(self, other: "BasePrime") -> bool:
        """Containment self ⊆ other."""
        return self.ring.prime_le(self, other)

    def key(self) -> tuple:
        return ("B", self.kind, self.value if self.value is not None else -1)

    def zero_prime_of_root(self) -> bool:
        return self.kind == "zero" or (self.kind == "chain" and self.value == 0)

    def render(self) -> str:
        if self.kind == "zero" or (self.kind == "chain" and self.value == 0):
            return "0"
        if self.kind == "principal":
            return str(self.value)
        return f"P{self.value}"

    @property
    def base_prime(self) -> "BasePrime":
        return self

    def polypart(self) -> list:
        return []

    def __str__(self) -> str:
        return "(" + self.render() + ")"
