"""Closed-form expectations the enumeration engine is checked against.

These are interpolation formulas fitted to exhaustive runs over odd degrees
15 through 299 and shifts |c| <= 2, plus the small-degree count sequence,
the all-periodic box radius, and the residue table of the limit map. They
are reproduction targets only; nothing in the engine assumes them.
"""

from fractions import Fraction

FIT_RANGE = (15, 299)

# Exhaustive central-band periodic counts for the unshifted map, small odd d.
PERIODIC_COUNTS = {7: 49, 9: 89, 11: 105, 13: 153, 15: 233, 17: 257, 19: 329}


def _as_int(q: Fraction) -> int:
    if q.denominator != 1:
        raise ValueError(f"formula produced a non-integer: {q}")
    return q.numerator


def interpolated_count(d: int, c: int) -> int:
    """Fitted periodic-point count for degree d and shift c.

    Valid keys: odd d, |c| <= 2. The fit range is d in [15, 299]; outside
    it the formulas are extrapolations and disagreement is expected.
    """
    if d % 2 == 0 or d < 3:
        raise ValueError(f"degree must be odd and >= 3, got {d}")
    if abs(c) > 2:
        raise ValueError(f"no fitted formula for shift {c}")
    r, a, dd = d % 6, abs(c), Fraction(d)
    if r == 1:
        q = {0: dd**2 - Fraction(8, 3) * dd + Fraction(56, 3),
             1: dd**2 + 2 * dd + 4,
             2: dd**2 - 6 * dd + 18}[a]
    elif r == 3:
        # the two signs genuinely differ in this residue class
        q = {0: dd**2 + 8,
             1: dd**2 + 4 * dd + (1 if c > 0 else 0),
             2: dd**2 - 4 * dd + 7}[a]
    else:
        q = {0: dd**2 - Fraction(8, 3) * dd + Fraction(40, 3),
             1: dd**2 - 2 * dd + 29,
             2: dd**2 - Fraction(22, 3) * dd + Fraction(161, 3)}[a]
    return _as_int(q)


def interpolated_longest(d: int, c: int) -> int:
    """Fitted longest cycle length for degree d and shift c (same domain
    and fit range as interpolated_count)."""
    if d % 2 == 0 or d < 3:
        raise ValueError(f"degree must be odd and >= 3, got {d}")
    if abs(c) > 2:
        raise ValueError(f"no fitted formula for shift {c}")
    r, a, dd = d % 6, abs(c), Fraction(d)
    if r == 1:
        q = {0: Fraction(8 * d + 10, 3),
             1: Fraction(10 * d - 7, 3),
             2: Fraction(16 * d - 61, 3)}[a]
    elif r == 3:
        q = {0: Fraction(20), 1: Fraction(8 * d - 39), 2: Fraction(60)}[a]
    else:
        q = {0: Fraction(20),
             1: Fraction(14 * d - 31, 3),
             2: Fraction(28 * d - 185, 3)}[a]
    return _as_int(q)


def count_bracket(d: int) -> tuple[int, int]:
    """Proven bracket [(d-4)^2, (d+6)^2] for the unshifted periodic count."""
    return (d - 4) ** 2, (d + 6) ** 2


def all_periodic_radius(d: int) -> int:
    """Largest proven R such that every integer point with sup-norm <= R is
    periodic under the degree-d map; three cases by d mod 6."""
    if d % 2 == 0 or d < 3:
        raise ValueError(f"degree must be odd and >= 3, got {d}")
    return (d + 1) // 2 - {1: 0, 3: 2, 5: 3}[d % 6]


# Periods of the limit map (y, -x + sigma(y)) by residue of the starting
# point mod 6: LIMIT_PERIOD_TABLE[y % 6][x % 6].
LIMIT_PERIOD_TABLE = (
    (4, 12, 20, 4, 20, 12),
    (12, 12, 20, 20, 20, 20),
    (20, 20, 20, 12, 12, 20),
    (4, 20, 12, 4, 12, 20),
    (20, 20, 12, 12, 20, 20),
    (12, 20, 20, 20, 20, 12),
)

# The only points whose period differs from their residue-class entry:
# the fixed origin, ten points of period 5, six of period 6.
LIMIT_EXCEPTIONS = {
    (0, 0): 1,
    (2, 0): 5, (2, 1): 5, (1, 2): 5, (0, 2): 5, (-1, 1): 5,
    (-2, 0): 5, (-2, -1): 5, (-1, -2): 5, (0, -2): 5, (1, -1): 5,
    (1, 0): 6, (1, 1): 6, (0, 1): 6, (-1, 0): 6, (-1, -1): 6, (0, -1): 6,
}

# Fixed scatter palette keyed by period class; class 1 is bright red.
PERIOD_CLASS_COLORS = {
    1: "#e41a1c",
    4: "#377eb8",
    5: "#4daf4a",
    6: "#984ea3",
    12: "#ff7f00",
    20: "#17becf",
}
