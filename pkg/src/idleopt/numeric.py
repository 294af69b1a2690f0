"""Numeric representation shared by every solver.

Two modes are supported and selected per computation:

* exact mode  -- values are ``int`` or ``fractions.Fraction``; all
  arithmetic is closed and comparisons are exact.  Required wherever
  yes/no answers hinge on gaps as small as O(1/W) (reduction
  verification, tie detection).
* float mode  -- plain 64-bit floats, the fast default for solving.

Rather than wrapping numbers in a custom class, the mode lives in the
values themselves: parse an instance in exact mode and every derived
quantity stays rational, because Fraction arithmetic is closed under
+, -, *, / and integer powers.  The helpers below centralise parsing,
serialisation ("p/q" strings) and the one documented float tolerance
used for every "time A beats time B" decision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Number = Union[int, float, Fraction]

#: Uniform float-mode comparison tolerance (relative, absolute).
REL_TOL = 1e-9
ABS_TOL = 1e-12


def is_exact(value: Number) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def close(a: Number, b: Number) -> bool:
    """Equality under the documented tolerance; exact equality if both exact."""
    if a == math.inf or b == math.inf:
        return a == b
    if is_exact(a) and is_exact(b):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=REL_TOL, abs_tol=ABS_TOL)


def time_lt(a: Number, b: Number) -> bool:
    """True when time ``a`` strictly beats time ``b``."""
    return a < b and not close(a, b)


def time_le(a: Number, b: Number) -> bool:
    return a < b or close(a, b)


def parse_number(raw, exact: bool) -> Number:
    """Parse one NumberJson value (JSON number, or "p/q" string).

    Exact mode always yields Fraction (plain int division would fall
    back to binary floats); decimal literals are converted via their
    decimal string so 1.2 becomes 6/5, not the nearest float.
    """
    if isinstance(raw, str):
        frac = Fraction(raw)
        return frac if exact else float(frac)
    if isinstance(raw, bool) or raw is None:
        raise ValueError(f"not a number: {raw!r}")
    if exact:
        return Fraction(raw) if isinstance(raw, int) else Fraction(str(raw))
    return float(raw)


def number_to_json(value: Number):
    """Serialise a number: exact values as int or "p/q", floats as-is."""
    if value == math.inf:
        return None
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    return float(value)


def fmt(value: Number) -> str:
    """Human-facing rendering: "p/q" when exact, 12 significant digits else."""
    if value == math.inf:
        return "unreachable"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return f"{value:.12g}"


def ceil_number(value: Number) -> int:
    """Ceiling that forgives float fuzz just below an integer."""
    if is_exact(value):
        return math.ceil(value)
    nearest = round(value)
    if close(value, nearest):
        return int(nearest)
    return math.ceil(value)


def floor_number(value: Number) -> int:
    """Floor that forgives float fuzz just above an integer."""
    if is_exact(value):
        return math.floor(value)
    nearest = round(value)
    if close(value, nearest):
        return int(nearest)
    return math.floor(value)


def min_power_reaching(base: Number, factor: Number, target: Number) -> int:
    """Smallest n >= 0 with base * factor**n >= target (factor > 1)."""
    if factor <= 1:
        raise ValueError("growth factor must exceed 1")
    n = 0
    price = base
    while price < target:
        price *= factor
        n += 1
    return n
