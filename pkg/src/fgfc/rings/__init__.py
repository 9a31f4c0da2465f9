"""Concrete base rings and the ring-level operations the engine uses."""

from __future__ import annotations

from typing import Sequence

from ..errors import CapabilityError
from .base import BasePrime, Ring, ZeroRing
from .integers import (INTEGERS, IntegersLocalQuotient, IntegersMod, Integers,
                       PrimeField, RationalField)
from .valuation import ValuationRing, first_nonzero, smallest_prime_containing, value_of
from .values import ValueVector

QQ_RING = RationalField()


def min_primes_base(R: Ring, J: Sequence) -> list[BasePrime]:
    """Minimal primes of R over the ideal generated by J."""
    if not hasattr(R, "min_primes"):
        raise CapabilityError("min-primes", f"no minimal-prime oracle for {R!r}")
    return R.min_primes([R.convert(a) for a in J])


def localize(R: Ring, c) -> Ring:
    return R.localize(R.convert(c))


def quotient_ring(R: Ring, J: Sequence) -> Ring:
    return R.quotient([R.convert(a) for a in J])


__all__ = [
    "BasePrime", "INTEGERS", "Integers", "IntegersLocalQuotient", "IntegersMod",
    "PrimeField", "QQ_RING", "RationalField", "Ring", "ValuationRing", "ValueVector",
    "ZeroRing", "first_nonzero", "localize", "min_primes_base", "quotient_ring",
    "smallest_prime_containing", "value_of",
]
