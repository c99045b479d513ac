"""Exact grid checks and searches for the polynomial families.

Everything decidable is decided in rational arithmetic: the sup bounds on
the centered binomials and their derivatives, tail growth and monotonicity
of the discrete sine, real and p-adic escape of the compressing family, the
preperiodic integers, and the exhaustive optimal-compression search. The
only floating-point surface is the convergence report, whose limit function
is transcendental.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .exact import (InternalConsistencyError, factorial_padic_abs,
                    log_rational_bounds, padic_abs)
from .polyfamily import (Poly, _sine_at_half, binomial_derivative_value,
                         binomial_value, compressing_poly, discrete_sine,
                         discrete_sine_value, six_wave)

BOUND_CHECKS = ("cd_sup", "cd_sup_inner", "cd_deriv", "cd_deriv_inner",
                "tail_growth", "monotone", "real_escape", "padic_escape")

# checks whose cited inequality is strict; the rest pass on margin >= 0
_STRICT = frozenset({"cd_deriv", "cd_deriv_inner", "monotone",
                     "real_escape", "padic_escape"})


@dataclass(frozen=True)
class BoundReport:
    check: str
    d: int
    samples: tuple
    worst_margin: Fraction
    worst_x: Fraction | None
    passed: bool

    def to_record(self) -> dict:
        lo = str(min(self.samples)) if self.samples else None
        hi = str(max(self.samples)) if self.samples else None
        return {
            "check": self.check,
            "d": self.d,
            "grid": {"count": len(self.samples), "lo": lo, "hi": hi},
            "worst_margin": str(self.worst_margin),
            "worst_x": None if self.worst_x is None else str(self.worst_x),
            "passed": self.passed,
        }


def _report(check: str, d: int, samples, margins) -> BoundReport:
    """Fold (x, margin) pairs into a BoundReport with the check's own
    strictness convention."""
    worst_x, worst = None, None
    for x, margin in margins:
        if worst is None or margin < worst:
            worst, worst_x = margin, x
    if worst is None:
        # empty grid: vacuous pass, margin reported as 0
        return BoundReport(check, d, tuple(samples), Fraction(0), None, True)
    passed = worst > 0 if check in _STRICT else worst >= 0
    return BoundReport(check, d, tuple(samples), worst, worst_x, passed)


@dataclass(frozen=True)
class SigmaReport:
    d: int
    passed: bool
    counterexample: tuple | None  # (m, s_d(m), expected wave value)

    def to_record(self) -> dict:
        ce = self.counterexample
        return {"d": self.d, "passed": self.passed,
                "counterexample": None if ce is None else
                {"m": str(ce[0]), "value": str(ce[1]), "expected": ce[2]}}


def verify_sigma_agreement(d: int) -> SigmaReport:
    """Check that the degree-d discrete sine equals the six-periodic wave
    at a shifted argument across its central band.

    The band is m in {-(d+1)/2, ..., (d+1)/2}, integers for odd d and
    half-integers for even d. The wave shift is 3(d-1)/2 for odd d and
    3(d+1)/2 for even d; both make the wave argument an integer.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    shift3 = 3 * (d - 1) if d % 2 else 3 * (d + 1)
    for q in range(-(d + 1), d + 2, 2):  # q = 2m
        got = _sine_at_half(d, q)
        want = six_wave((q + shift3) // 2)
        if got != want:
            return SigmaReport(d, False, (Fraction(q, 2), got, want))
    return SigmaReport(d, True, None)


def _unit_fraction_step(step) -> Fraction:
    step = Fraction(step)
    if step <= 0 or step.numerator != 1:
        raise ValueError(
            f"grid step must be a unit fraction 1/n, got {step}")
    return step


def _grid(lo: Fraction, hi: Fraction, step: Fraction) -> list:
    xs = []
    x = lo
    while x <= hi:
        xs.append(x)
        x += step
    return xs


def verify_cd_bounds(d: int, which: str,
                     grid_step=Fraction(1, 4)) -> BoundReport:
    """Exact grid check of one sup bound on the degree-d centered binomial.

    which selects the claim: cd_sup is |c_d| <= 1/(4d) on |x| <= (d-1)/2;
    cd_sup_inner is |c_d| <= 1/(2d(d-1)) on |x| <= (d-3)/2; cd_deriv and
    cd_deriv_inner are the strict derivative analogues with (log d + 3) in
    the numerator. The logarithm enters through a certified rational lower
    bound, so a reported pass implies the true inequality.
    """
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    if which not in ("cd_sup", "cd_sup_inner", "cd_deriv", "cd_deriv_inner"):
        raise ValueError(f"unknown bound check {which!r}")
    step = _unit_fraction_step(grid_step)
    inner = which.endswith("_inner")
    half_width = Fraction(d - 3, 2) if inner else Fraction(d - 1, 2)
    if which == "cd_sup":
        bound = Fraction(1, 4 * d)
    elif which == "cd_sup_inner":
        bound = Fraction(1, 2 * d * (d - 1))
    else:
        log_lo = log_rational_bounds(d)[0]
        bound = (log_lo + 3) / (2 * d if which == "cd_deriv"
                                else d * (d - 1))
    if half_width < 0:
        return _report(which, d, [], [])
    xs = _grid(-half_width, half_width, step)
    deriv = which.startswith("cd_deriv")
    value = binomial_derivative_value if deriv else binomial_value
    margins = ((x, bound - abs(value(d, x))) for x in xs)
    return _report(which, d, xs, margins)


def verify_tail_growth(d: int, cap=None) -> BoundReport:
    """Exact check that the degree-d discrete sine dominates 3x on its
    growth tail x >= (d+7)/2, x in Z + (d+1)/2, up to cap."""
    if d < 3:
        raise ValueError(f"degree must be >= 3, got {d}")
    lo = Fraction(d + 7, 2)
    cap = lo + 500 if cap is None else Fraction(cap)
    if cap < lo:
        raise ValueError(f"cap {cap} below first tail point {lo}")
    xs, margins = [], []
    q = d + 7  # q = 2x
    while Fraction(q, 2) <= cap:
        x = Fraction(q, 2)
        xs.append(x)
        margins.append((x, _sine_at_half(d, q) - 3 * x))
        q += 2
    return _report("tail_growth", d, xs, margins)


def verify_monotonicity(d: int, cap=None,
                        grid_step=Fraction(1, 4)) -> BoundReport:
    """Exact check that the degree-d discrete sine is strictly increasing
    from (d+3)/2 on: consecutive grid values increase and the derivative is
    positive at every grid point."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    step = _unit_fraction_step(grid_step)
    lo = Fraction(d + 3, 2)
    cap = lo + 20 if cap is None else Fraction(cap)
    if cap <= lo:
        raise ValueError(f"cap {cap} must exceed {lo}")
    xs = _grid(lo, cap, step)
    vals = [discrete_sine_value(d, x) for x in xs]
    sprime = discrete_sine(d).derivative()
    margins = []
    for i in range(1, len(xs)):
        margins.append((xs[i], vals[i] - vals[i - 1]))
    for x in xs:
        margins.append((x, sprime(x)))
    return _report("monotone", d, xs, margins)


@dataclass(frozen=True)
class ConvergenceReport:
    k_values: tuple
    errors: dict  # family name -> list of sup errors, same order as k_values
    interval: tuple
    step: float
    tolerance: float
    passed: bool

    def to_record(self) -> dict:
        return {
            "k_values": list(self.k_values),
            "errors": {fam: [format(e, ".17g") for e in errs]
                       for fam, errs in self.errors.items()},
            "interval": list(self.interval),
            "step": format(self.step, ".17g"),
            "tolerance": format(self.tolerance, ".17g"),
            "passed": self.passed,
        }


_TWO_OVER_SQRT3 = 2 / math.sqrt(3.0)


def _float_horner(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def convergence_report(k_max: int = 30, interval=(-6.0, 6.0),
                       step: float = 0.1,
                       tolerance: float = 1e-8) -> ConvergenceReport:
    """Sup-grid distance between the alternating sine family and its
    trigonometric limit, in double precision.

    Four families are tracked: (-1)^k s_{2k+1} against (2/sqrt 3)sin(pi x/3),
    (-1)^k s_{2k} against (2/sqrt 3)cos(pi x/3), and both derivative
    analogues. The pass flag requires every family's final sup error to be
    within tolerance.
    """
    if k_max < 5:
        raise ValueError(f"k_max must be >= 5, got {k_max}")
    a, b = float(interval[0]), float(interval[1])
    if not (math.isfinite(a) and math.isfinite(b) and b > a and step > 0):
        raise ValueError("interval must be bounded with positive step")
    n = int(round((b - a) / step))
    xs = [a + i * step for i in range(n + 1)]
    ks = tuple(range(5, k_max + 1, 5))
    c = math.pi / 3
    targets = {
        "sine": lambda x: _TWO_OVER_SQRT3 * math.sin(c * x),
        "cosine": lambda x: _TWO_OVER_SQRT3 * math.cos(c * x),
        "sine_deriv": lambda x: _TWO_OVER_SQRT3 * c * math.cos(c * x),
        "cosine_deriv": lambda x: -_TWO_OVER_SQRT3 * c * math.sin(c * x),
    }
    errors = {fam: [] for fam in targets}
    for k in ks:
        sign = -1.0 if k % 2 else 1.0
        odd = discrete_sine(2 * k + 1)
        even = discrete_sine(2 * k)
        polys = {
            "sine": odd, "cosine": even,
            "sine_deriv": odd.derivative(),
            "cosine_deriv": even.derivative(),
        }
        for fam, poly in polys.items():
            cs = [float(cf) for cf in poly.coeffs]
            target = targets[fam]
            sup = max(abs(sign * _float_horner(cs, x) - target(x))
                      for x in xs)
            errors[fam].append(sup)
    passed = all(errs[-1] <= tolerance for errs in errors.values())
    return ConvergenceReport(ks, errors, (a, b), step, tolerance, passed)


def real_escape_check(d: int, samples=None) -> BoundReport:
    """Exact check that the degree-d compressing polynomial moves real
    points outward, |f(x)| > |x|, on the tail and nonpositive samples."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    f = compressing_poly(d)
    if samples is None:
        samples = [Fraction(2 * (d + 7) + i, 2) for i in range(21)]
        samples += [Fraction(-i, 2) for i in range(21)]
    samples = [Fraction(x) for x in samples]
    margins = ((x, abs(f(x)) - abs(x)) for x in samples)
    return _report("real_escape", d, samples, margins)


def _coprime_units(p: int, count: int):
    out, a = [], 1
    while len(out) < count:
        if a % p:
            out.append(a)
            if len(out) < count:
                out.append(-a)
        a += 1
    return out[:count]


def padic_escape_check(d: int, p: int, samples=None) -> BoundReport:
    """Exact check that the degree-d compressing polynomial increases
    p-adic absolute value on samples with |x|_p > 1."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    if samples is None:
        samples = [Fraction(a, p ** k)
                   for k in range(1, 5) for a in _coprime_units(p, 50)]
    samples = [Fraction(x) for x in samples]
    for x in samples:
        if padic_abs(x, p) <= 1:
            raise ValueError(f"sample {x} has |x|_{p} <= 1")
    f = compressing_poly(d)
    margins = ((x, padic_abs(f(x), p) - padic_abs(x, p)) for x in samples)
    return _report("padic_escape", d, samples, margins)


def preperiodic_integers(d: int) -> set:
    """The integers in (0, d+7) that are preperiodic under the degree-d
    compressing polynomial; compression forces this to be all of them.

    Raises an internal consistency error if any orbit leaves the interval
    or hits a non-integer value, since either would contradict the
    construction.
    """
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    f = compressing_poly(d)
    table = {}
    for n in range(1, d + 7):
        v = f(n)
        if v.denominator != 1:
            raise InternalConsistencyError(
                f"non-integer image f({n}) = {v} at d={d}")
        if not 0 < v < d + 7:
            raise InternalConsistencyError(
                f"orbit left (0, {d + 7}): f({n}) = {v} at d={d}")
        table[n] = v.numerator
    out = set()
    for n in table:
        seen = []
        cur = n
        while cur not in seen:
            seen.append(cur)
            cur = table[cur]
        out.update(seen)
    return out


def compression_check(f: Poly, m: int) -> bool:
    """True iff f maps {1, ..., m} into itself; f must take integer values
    there (checked by evaluation)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    ok = True
    for i in range(1, m + 1):
        v = f(i)
        if v.denominator != 1:
            raise ValueError(f"f({i}) = {v} is not an integer")
        ok = ok and 1 <= v.numerator <= m
    return ok


@dataclass(frozen=True)
class SearchResult:
    degree: int
    m: int
    polynomials: tuple  # canonical representatives, positive leading coeff
    raw: tuple          # every solution, reflections included

    def to_record(self) -> dict:
        return {"degree": self.degree, "m": self.m,
                "polynomials": [p.as_text() for p in self.polynomials],
                "raw_count": len(self.raw)}


def _from_initial_values(values) -> Poly:
    """The unique integer-valued interpolant through f(1), f(2), ... given
    as Newton forward differences on falling binomial factors."""
    diffs = list(values)
    deltas = [diffs[0]]
    for _ in range(len(values) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        deltas.append(diffs[0])
    total = Poly([0])
    basis = Poly([1])
    for j, dv in enumerate(deltas):
        if j > 0:
            basis = basis * Poly([-j, 1])  # append factor (x - j)
        total = total + basis * Fraction(dv, factorial(j))
    return total


def optimal_compression_search(degree: int, m: int) -> SearchResult:
    """Exhaustive search for integer-valued degree-2 or degree-3
    polynomials mapping {1, ..., m} into itself.

    Candidates are the value tuples at the first degree+1 points; forward
    differences extend each candidate across the rest of the interval with
    early abort, and interpolants of lower degree are excluded. Solutions
    come in pairs under the value reflection f -> (m+1) - f, which negates
    the leading coefficient; `polynomials` keeps the positive-leading
    representative of each pair and `raw` keeps everything.
    """
    if degree not in (2, 3):
        raise ValueError(f"degree must be 2 or 3, got {degree}")
    if not 2 <= m <= 30:
        raise ValueError(f"m must be in [2, 30], got {m}")
    solutions = []
    for values in product(range(1, m + 1), repeat=degree + 1):
        diffs = list(values)
        tail = [values[-1]]
        for _ in range(degree):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
            tail.append(diffs[-1])
        if tail[degree] == 0:
            continue  # interpolant has lower degree
        ok = True
        for _ in range(degree + 2, m + 1):
            for j in range(degree - 1, -1, -1):
                tail[j] += tail[j + 1]
            if not 1 <= tail[0] <= m:
                ok = False
                break
        if ok:
            solutions.append(values)
    solutions.sort()
    raw = tuple(_from_initial_values(v) for v in solutions)
    canonical = tuple(p for p in raw if p.coeffs[-1] > 0)
    return SearchResult(degree, m, canonical, raw)


@dataclass(frozen=True)
class RadiusReport:
    d: int
    place: str  # "inf" or the prime as a string
    radius: Fraction
    is_exception: bool  # finite place with radius >= p

    def to_record(self) -> dict:
        return {"d": self.d, "place": self.place,
                "radius": str(self.radius),
                "is_exception": self.is_exception}


def escape_radius(d: int, place) -> Fraction:
    """Certified escape radius of the degree-d dynamics at a place of Q:
    (d+7)/2 at the infinite place, 1 + 3|d!|_p at a finite prime p."""
    if d % 2 == 0 or d < 3:
        raise ValueError(f"degree must be odd and >= 3, got {d}")
    if place in ("inf", math.inf):
        return Fraction(d + 7, 2)
    return 1 + 3 * factorial_padic_abs(d, place)


def radius_report(d: int, place) -> RadiusReport:
    r = escape_radius(d, place)
    if place in ("inf", math.inf):
        return RadiusReport(d, "inf", r, False)
    return RadiusReport(d, str(place), r, r >= place)


def escape_radius_exceptions(d_max: int = 299,
                             p_max: int = 100) -> list:
    """All (p, d) with odd d <= d_max, prime p <= p_max where the finite
    escape radius fails to stay below p."""
    from .exact import is_prime
    out = []
    for p in range(2, p_max + 1):
        if not is_prime(p):
            continue
        for d in range(3, d_max + 1, 2):
            if escape_radius(d, p) >= p:
                out.append((p, d))
    return out
