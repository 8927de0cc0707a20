"""Exact arithmetic of slopes on a torus and twist-sequence encodings.

A slope is a reduced fraction p/q with q >= 0, where 1/0 is the legal
"infinite" slope.  Distance between slopes is the minimal geometric
intersection number |p1*q2 - p2*q1|.

Twist sequences encode rational tangles in the Conway convention: the
sequence [a1, ..., an] evaluates to an + 1/(a_{n-1} + 1/(... + 1/a1)),
so the rightmost entry is the outermost twist region.  Canonical
expansions keep every entry except the last at absolute value >= 2,
which makes the encoding of a fraction unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True, order=False)
class Slope:
    """A reduced fraction p/q on the torus; q == 0 only for the slope 1/0."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 0:
            raise ValueError("Slope must be normalized: denominator >= 0")
        if self.denominator == 0 and self.numerator != 1:
            raise ValueError("infinite slope must be normalized to 1/0")
        if gcd(abs(self.numerator), self.denominator) != 1:
            raise ValueError(f"Slope {self.numerator}/{self.denominator} is not reduced")

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"Slope({self.numerator}, {self.denominator})"


INFINITY = None  # set after slope_normalize is defined


def slope_normalize(p: int, q: int) -> Slope:
    """Reduce (p, q) to the canonical representative with q >= 0.

    (p, 0) normalizes to 1/0 for any p != 0; (0, 0) is rejected.
    """
    if p == 0 and q == 0:
        raise ValueError("(0, 0) does not represent a slope")
    if q == 0:
        return Slope(1, 0)
    g = gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return Slope(p, q)


INFINITY = slope_normalize(1, 0)
ZERO = slope_normalize(0, 1)


def slope_from_str(text: str) -> Slope:
    """Parse "p/q" or a bare integer.  "1/0", "1/-3" and "-1/3" are all legal."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return slope_normalize(int(num), int(den))
    return slope_normalize(int(text), 1)


def slope_distance(r1: Slope, r2: Slope) -> int:
    """Minimal geometric intersection number |p1*q2 - p2*q1|."""
    return abs(r1.numerator * r2.denominator - r2.numerator * r1.denominator)


@dataclass(frozen=True)
class TwistSequence:
    """A finite tuple of integer twist counts, innermost region first."""

    entries: tuple[int, ...]

    def __init__(self, entries):
        object.__setattr__(self, "entries", tuple(int(a) for a in entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def twists_to_fraction(t: TwistSequence | tuple[int, ...] | list[int]) -> Slope:
    """Evaluate a twist sequence to its tangle fraction.

    Empty sequences evaluate to 0/1, and 1/0 is a legal result (e.g. [0, 0]).
    Arithmetic is formal on (num, den) pairs, so intermediate infinities are
    fine as long as the final pair is nonzero.
    """
    entries = tuple(t)
    if not entries:
        return ZERO
    # Running value v_k = entries[k-1] + 1/v_{k-1}, seeded with v_0 = 1/0 so a
    # single entry [a] evaluates to a.  Pairs are formal, so intermediate
    # infinities are harmless.
    p, q = 1, 0
    for a in entries:
        p, q = a * p + q, p
        if (p, q) == (0, 0):
            raise ValueError("twist sequence hit the indeterminate 0/0")
    return slope_normalize(p, q)


def fraction_to_twists(s: Slope) -> TwistSequence:
    """Canonical twist sequence for a slope: entries before the last have |a| >= 2.

    Uses nearest-integer division so every interior entry has absolute value
    at least 2; the final (outermost) entry is unconstrained.  The infinite
    slope encodes as [0, 0].
    """
    if s.is_infinite:
        return TwistSequence((0, 0))
    entries: list[int] = []
    p, q = s.numerator, s.denominator
    # Peel outermost entries: value = a + 1/rest.  Interior entries must come
    # from nearest-integer rounding, which keeps |rest| >= 2 at every step.
    while True:
        if q == 1:
            entries.append(p)
            break
        # nearest integer to p/q, ties rounded away from zero, for determinism
        a = (2 * p + q) // (2 * q) if p >= 0 else -((2 * (-p) + q) // (2 * q))
        r_num, r_den = p - a * q, q
        if r_num == 0:
            entries.append(a)
            break
        entries.append(a)
        # rest = 1 / (p/q - a)
        p, q = r_den, r_num
        if q < 0:
            p, q = -p, -q
    entries.reverse()
    return TwistSequence(entries)
