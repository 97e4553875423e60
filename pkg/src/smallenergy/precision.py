"""Working-precision control and decimal parsing/formatting.

All scalar arithmetic in this package runs on mpmath under an explicit
PrecisionContext.  Functions temporarily raise the global mpmath precision
with ``ctx.workdps()``; guard digits absorb rounding in intermediate steps
so results are faithful at the requested digit count.
"""

import re
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_EVEN, localcontext

from mpmath import mp, mpf

from .errors import ParseError, UsageError

MIN_DIGITS = 30
GUARD_DIGITS = 10

_DECIMAL_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True)
class PrecisionContext:
    """Number of significant decimal digits carried by every scalar."""

    decimal_digits: int

    def __post_init__(self):
        if self.decimal_digits < MIN_DIGITS:
            raise UsageError(
                f"precision context needs at least {MIN_DIGITS} decimal digits, "
                f"got {self.decimal_digits}"
            )

    def workdps(self, extra: int = 0):
        """mpmath precision scope: context digits plus guard digits."""
        return mp.workdps(self.decimal_digits + GUARD_DIGITS + extra)

    @property
    def eps(self):
        """One unit in the last carried decimal place at magnitude 1."""
        with self.workdps():
            return mpf(10) ** (-self.decimal_digits)


def parse_real(text: str, ctx: PrecisionContext):
    """Parse a signed decimal (optional exponent) into an mpf under ctx.

    Raises ParseError naming the first offending character position.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a decimal string, got {type(text).__name__}")
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty decimal string", position=0)
    m = _DECIMAL_RE.match(stripped)
    if m is None or m.end() != len(stripped):
        pos = 0 if m is None else m.end()
        raise ParseError(
            f"malformed decimal {text!r}: unexpected character at position {pos}",
            position=pos,
        )
    with ctx.workdps():
        return mpf(stripped)


def format_significant(x, digits: int = 10) -> str:
    """Format x with exactly `digits` significant digits, round-half-even."""
    if digits < 1:
        raise UsageError("need at least one significant digit")
    xm = mpf(x) if not hasattr(x, "_mpf_") else x
    if xm == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    with mp.workdps(digits + 15):
        s = mp.nstr(mp.mpf(xm), digits + 12)
    d = Decimal(s)
    exp_target = d.adjusted() - (digits - 1)
    with localcontext() as c:
        c.prec = digits + 5
        c.rounding = ROUND_HALF_EVEN
        q = d.quantize(Decimal(1).scaleb(exp_target))
    return format(q, "f")


def format_full(x, ctx: PrecisionContext) -> str:
    """Format x at the full context precision."""
    with ctx.workdps():
        return mp.nstr(mp.mpf(x), ctx.decimal_digits)
