from __future__ import annotations

from fractions import Fraction


def frac(x) -> str:
    """``"p/q"`` (or ``"p"`` for integers); the authoritative printed form."""
    return str(Fraction(x))


def dec(x) -> float:
    """Six-place decimal companion to :func:`frac`."""
    return round(float(Fraction(x)), 6)


def parse_fraction(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational value: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError(f"give rational values as 'p/q' strings, not floats: {text!r}")
    return Fraction(str(text).strip())
