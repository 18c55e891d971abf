"""Exact rational parsing and rendering.

Every geometric quantity in this package is a :class:`fractions.Fraction`;
floating point appears only in output rendering.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rat(text: str) -> Fraction:
    """Parse an exact rational from ``"p/q"`` or ``"p"`` notation.

    Decimal notation is rejected on purpose: silently converting e.g.
    ``0.1`` to a binary float would break the exact equalities this
    package certifies.
    """
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(
            f"not an exact rational (expected 'p' or 'p/q'): {text!r}"
        )
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def rat_str(x: Fraction) -> str:
    """Render in lowest terms as ``"p/q"``, or ``"p"`` when q = 1."""
    return str(x)


def dec_str(x: Fraction, sig: int = 12) -> str:
    """Decimal rendering to ``sig`` significant digits (presentation only)."""
    return format(float(x), f".{sig}g")
