"""Exact integer and rational arithmetic: the substrate for every membership test.

Rationals are carried as :class:`fractions.Fraction` (always stored in lowest
terms with positive denominator, which is exactly the invariant we need).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def gcd_many(values: Iterable[int]) -> int:
    """gcd of all entries; the all-zero (or empty) vector has gcd 0."""
    return math.gcd(*values) if values else 0


def rat_normalize(num: int, den: int) -> Fraction:
    """Lowest-terms rational num/den with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


def rat_from_decimal_string(s: str) -> Fraction:
    """Exact value of a decimal literal such as "0.415" or "1e-3"."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational literal: {s!r}") from exc


def rat_parse(s: str) -> Fraction:
    """Parse either "num/den" or a decimal literal, exactly."""
    return rat_from_decimal_string(s)


def rat_str(x: Fraction) -> str:
    """Canonical "num/den" serialization (denominator always present)."""
    return f"{x.numerator}/{x.denominator}"


def cf_expansion(x: Fraction) -> list[int]:
    """Canonical continued-fraction terms [a0; a1, ..., ak].

    a_i >= 1 for i >= 1 and the final term is >= 2 whenever k >= 1, which
    makes the expansion unique. The Euclidean algorithm produces this form
    directly.
    """
    num, den = x.numerator, x.denominator
    terms = []
    while den:
        a, r = divmod(num, den)
        terms.append(a)
        num, den = den, r
    return terms


def cf_value(terms: Sequence[int]) -> Fraction:
    """Reconstruct the rational from its continued-fraction terms."""
    if not terms:
        raise ValueError("empty continued fraction")
    v = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        v = a + 1 / v
    return v


@dataclass(frozen=True)
class PrimitivePoint:
    """Primitive integer vector (p, q): gcd(p1, ..., pn, q) = 1, q >= 1."""

    p: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        if gcd_many((*self.p, self.q)) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not primitive")

    @property
    def dim(self) -> int:
        return len(self.p)

    def value(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(pi, self.q) for pi in self.p)

    def __str__(self) -> str:
        return f"{','.join(map(str, self.p))}/{self.q}"
