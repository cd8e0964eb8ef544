"""Exact scalars: rationals and the min-plus tropical semiring.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  The tropical zero is :data:`INF`; tropical addition is
``min`` and tropical multiplication is ``+``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Fraction


class _Infinity:
    """The additive identity of the min-plus semiring (larger than every rational)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("tropcycle.INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __neg__(self):
        raise ValueError("negating INF leaves the min-plus semiring; use to_max_plus")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

TropNum = Union[Fraction, _Infinity]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: every quantity in the engine is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"floating point value {x!r} is not allowed; pass a string 'p/q'")
    # sympy Rational and friends
    if hasattr(x, "p") and hasattr(x, "q"):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def trop(x) -> TropNum:
    """Coerce to a tropical number; ``"inf"`` and ``INF`` map to the tropical zero."""
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "infinity"):
        return INF
    return rat(x)


def is_inf(x) -> bool:
    return x is INF


def trop_add(a: TropNum, b: TropNum) -> TropNum:
    """Tropical sum: ``min(a, b)`` with INF as identity."""
    if a is INF:
        return b
    if b is INF:
        return a
    return a if a <= b else b


def trop_mul(a: TropNum, b: TropNum) -> TropNum:
    """Tropical product: ``a + b`` with INF absorbing."""
    if a is INF or b is INF:
        return INF
    return a + b


def trop_sum(values) -> TropNum:
    out: TropNum = INF
    for v in values:
        out = trop_add(out, v)
    return out


def trop_pow(a: TropNum, k: int) -> TropNum:
    """Tropical power ``a^{⊙k} = k·a`` for k >= 0."""
    if k < 0:
        raise ValueError("negative tropical powers are not defined for INF-capable values")
    if k == 0:
        return Fraction(0)
    if a is INF:
        return INF
    return a * k


def to_max_plus(a: TropNum):
    """Negation involution between min-plus and max-plus conventions.

    INF (min-plus zero) maps to the string ``"-inf"`` which :func:`from_max_plus`
    maps back.
    """
    if a is INF:
        return "-inf"
    return -a


def from_max_plus(a) -> TropNum:
    if isinstance(a, str) and a.strip().lower() in ("-inf", "-infinity"):
        return INF
    return -rat(a)


def format_rat(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_trop(x: TropNum) -> str:
    if x is INF:
        return "inf"
    return format_rat(x)


def parse_rat(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    raise ValueError(f"expected a rational string 'p/q', got {s!r}")


def parse_trop(s) -> TropNum:
    if isinstance(s, str) and s.strip().lower() == "inf":
        return INF
    return parse_rat(s)
