"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class FGFCError(Exception):
    """Base class for all errors raised by this package."""


class CapabilityError(FGFCError):
    """An operation needs an oracle the current ring or field does not provide.

    ``capability`` names the missing piece so callers (and the CLI) can report
    a machine-readable reason.
    """

    def __init__(self, capability: str, detail: str = "") -> None:
        self.capability = capability
        self.detail = detail
        self.path: tuple[str, ...] = ()
        msg = capability if not detail else f"{capability}: {detail}"
        super().__init__(msg)

    def with_path(self, path: tuple[str, ...]) -> "CapabilityError":
        if not self.path:
            self.path = path
        return self


class RingError(FGFCError):
    """Invalid ring construction or an element outside its ring."""


class NotAMemberError(RingError):
    """A fraction handed to a valuation domain has negative value."""


class DegenerateLocalizationError(RingError):
    """Localizing at zero would produce the zero ring."""


class NoPrimeError(RingError):
    """A unit was given where an element of some prime was expected."""


class ZeroElementError(RingError):
    """Zero was given where a nonzero element was required."""


class ZeroPolynomialError(FGFCError):
    """An operation that needs a nonzero polynomial received zero."""


class NotMonicError(FGFCError):
    """Division by a polynomial whose leading coefficient is not one."""


class RankExhaustedError(FGFCError):
    """A truncated construction asked for more chain primes than the rank has."""


class ShapeError(FGFCError):
    """A presentation matrix has a shape the Fitting-ideal code rejects."""


class OracleUnavailable(FGFCError):
    """An instance exceeds the bounds of a brute-force verification oracle."""


class ParseError(FGFCError):
    """Syntax error in a ring or ideal specification."""

    def __init__(self, message: str, text: str = "", pos: int = 0,
                 expected: tuple[str, ...] = ()) -> None:
        self.text = text
        self.pos = pos
        self.expected = tuple(sorted(set(expected)))
        self.line, self.column = _line_col(text, pos)
        where = f"line {self.line}, column {self.column}"
        if self.expected:
            message = f"{message} at {where} (expected one of: {', '.join(self.expected)})"
        else:
            message = f"{message} at {where}"
        super().__init__(message)


def _line_col(text: str, pos: int) -> tuple[int, int]:
    before = text[:pos]
    line = before.count("\n") + 1
    col = pos - (before.rfind("\n") + 1) + 1
    return line, col
