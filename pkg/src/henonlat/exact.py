"""Exact rational and p-adic arithmetic helpers.

Everything here is pure and exact: rationals are `fractions.Fraction`,
p-adic absolute values are rationals of the form p**(-v), and the certified
logarithm bounds are rational sandwiches with a proven truncation error.
No floats anywhere.
"""

from fractions import Fraction
from math import isqrt


class InternalConsistencyError(RuntimeError):
    """A mathematically impossible state was reached; signals a bug."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def _require_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime integer, got {p!r}")


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(q, p: int) -> int:
    """Largest v with q = p**v * (unit at p). Undefined (error) for q = 0."""
    _require_prime(p)
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero is undefined")
    return _int_valuation(q.numerator, p) - _int_valuation(q.denominator, p)


def padic_abs(q, p: int) -> Fraction:
    """|q|_p = p**(-v_p(q)) as an exact rational; |0|_p = 0."""
    _require_prime(p)
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    return Fraction(p) ** (-padic_valuation(q, p))


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by the floor-sum formula, without forming n!."""
    _require_prime(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    v, pk = 0, p
    while pk <= n:
        v += n // pk
        pk *= p
    return v


def factorial_padic_abs(n: int, p: int) -> Fraction:
    """|n!|_p computed via the floor-sum valuation."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return Fraction(p) ** (-factorial_valuation(n, p))


def log_rational_bounds(x, terms: int = 20) -> tuple[Fraction, Fraction]:
    """Certified rational bounds lower <= ln(x) <= upper for rational x >= 1.

    Uses ln(x) = m ln(2) + ln(u) with u = x / 2**m in [1, 2), and the
    atanh series ln(u) = 2 * sum z**(2i+1) / (2i+1), z = (u-1)/(u+1).
    All series terms are positive, so the truncated sum is a strict lower
    bound; the tail is dominated by the geometric series, giving
    tail <= z**(2N+1) / ((2N+1) (1 - z**2)) as a certified upper correction.
    With 20 terms the gap is below 1e-12 throughout the range used here.
    """
    x = Fraction(x)
    if x < 1:
        raise ValueError("log_rational_bounds requires x >= 1")
    if terms < 1:
        raise ValueError("terms must be positive")
    m = 0
    while x >= 2:
        x /= 2
        m += 1

    def series(u):
        z = (u - 1) / (u + 1)
        z2 = z * z
        total = Fraction(0)
        zp = z
        for i in range(terms):
            total += zp / (2 * i + 1)
            zp *= z2
        lo = 2 * total
        tail = 2 * zp / ((2 * terms + 1) * (1 - z2))
        return lo, lo + tail

    lo2, hi2 = series(Fraction(2))
    lox, hix = series(x)
    return m * lo2 + lox, m * hi2 + hix
