"""Exact integer-lattice dynamics of the degree-d maps and their limit.

The core map is (x, y) -> (y, -x + s(y + c)) for the odd-degree discrete
sine s and an integer shift c; a reflected orientation (x, y) ->
(-y, x + s(y + c)) is carried alongside because the two differ only by the
conjugation (x, y) -> (-x, y). Enumeration classifies every lattice point in
a proven box by walking orbit partitions, so each point is touched a
bounded number of times. The limit map replaces s with the six-periodic
wave and is exactly periodic on all of Z^2, which grounds the float
perturbation experiments at the end of the module.
"""

import math
from collections import Counter
from dataclasses import dataclass
from time import perf_counter

import numpy as np

from .exact import InternalConsistencyError
from .polyfamily import SIGMA, SineTable
from .reference import (FIT_RANGE, all_periodic_radius, count_bracket,
                        interpolated_count, interpolated_longest)

ORIENTATIONS = ("standard", "reflected")

LatticePoint = tuple  # (x, y) pair of ints


class NumericDivergenceError(RuntimeError):
    """A float orbit left the representable range (overflow or NaN)."""


def sup_norm(p) -> int:
    x, y = p
    return max(abs(x), abs(y))


class HenonMap:
    """The shifted degree-d map on Z^2 with a precomputed sine table.

    threshold is the certified escape bound (d+7)/2 + |c|: any orbit point
    with sup-norm at or past it never returns. The table covers every
    argument a non-escaped step can request; running past it means the
    escape check was skipped and is reported as an internal error.
    """

    __slots__ = ("d", "c", "orientation", "threshold", "box", "table",
                 "_values", "_offset")

    def __init__(self, d: int, c: int = 0, orientation: str = "standard"):
        if d % 2 == 0 or d < 3:
            raise ValueError(f"degree must be odd and >= 3, got {d}")
        if orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")
        self.d = d
        self.c = c
        self.orientation = orientation
        self.threshold = (d + 7) // 2 + abs(c)
        self.box = (d + 5) // 2 + abs(c)
        self.table = SineTable(d, self.threshold + abs(c))
        self._values = self.table._values
        self._offset = self.table.bound

    def _s(self, y: int) -> int:
        arg = y + self.c
        if abs(arg) > self.table.bound:
            raise InternalConsistencyError(
                f"sine table range exceeded at y={y}, c={self.c} "
                f"(escape should have been declared first)")
        return self._values[arg + self._offset]

    def step(self, p):
        x, y = p
        if self.orientation == "standard":
            return (y, -x + self._s(y))
        return (-y, x + self._s(y))

    def inverse_step(self, p):
        u, v = p
        if self.orientation == "standard":
            return (self._s(u) - v, u)
        return (v - self._s(-u), -u)


@dataclass(frozen=True)
class Periodic:
    period: int


@dataclass(frozen=True)
class Escapes:
    steps: int


def classify(hmap: HenonMap, p):
    """Walk the orbit of p: Escapes(k) at the first iterate whose sup-norm
    reaches the escape threshold (k steps in), Periodic(n) on first return.

    Terminates within (2*threshold+1)^2 steps because the map is a
    bijection on the finite non-escaped region; running past that cap is an
    internal error.
    """
    t = hmap.threshold
    cap = (2 * t + 1) ** 2 + 1
    x0, y0 = p
    x, y = x0, y0
    steps = 0
    while steps <= cap:
        if abs(x) >= t or abs(y) >= t:
            return Escapes(steps)
        if steps > 0 and x == x0 and y == y0:
            return Periodic(steps)
        x, y = hmap.step((x, y))
        steps += 1
    raise InternalConsistencyError(
        f"orbit of {p} under d={hmap.d}, c={hmap.c} exceeded the "
        f"iteration cap {cap}")


@dataclass(frozen=True)
class CycleRecord:
    """One periodic cycle: points in orbit order starting from the
    lexicographically least point."""
    representative: tuple
    length: int
    points: tuple

    def max_norm(self) -> int:
        return max(sup_norm(q) for q in self.points)

    def to_record(self) -> dict:
        return {"representative": list(self.representative),
                "length": self.length,
                "points": [list(q) for q in self.points]}


@dataclass(frozen=True)
class PeriodicReport:
    """Summary of one exhaustive enumeration.

    count totals the points of cycles confined to the central band
    (orbit sup-norm at most (d+1)/2 + |c|), which is the regime the fitted
    count formulas describe; full_count, histogram, longest_cycle, and
    cycles cover everything found in the certified enumeration box.
    """
    d: int
    c: int
    orientation: str
    count: int
    full_count: int
    histogram: dict
    longest_cycle: int
    cycles: tuple
    elapsed_ms: int = 0

    @property
    def n_cycles(self) -> int:
        return len(self.cycles)

    def to_record(self) -> dict:
        return {"d": self.d, "c": self.c, "orientation": self.orientation,
                "count": self.count, "full_count": self.full_count,
                "histogram": {str(k): v for k, v in
                              sorted(self.histogram.items())},
                "longest_cycle": self.longest_cycle,
                "n_cycles": self.n_cycles,
                "elapsed_ms": self.elapsed_ms}


def enumerate_periodic(d: int, c: int = 0, orientation: str = "standard",
                       timings: bool = False) -> PeriodicReport:
    """Classify every lattice point with sup-norm <= (d+5)/2 + |c| and
    decompose the periodic ones into cycles.

    Walks unclassified points forward, so every lattice point in the
    region is visited a constant number of times: a path either reaches
    sup-norm threshold (the whole path escapes), reaches a known escaper
    (same), or closes on its own start (the path is exactly one new cycle).
    Bijectivity rules anything else out; hitting a known periodic point
    mid-path is therefore an internal error. For c = 0 the all-periodic
    box radius is re-verified against the enumeration as a self-check.
    """
    started = perf_counter()
    hmap = HenonMap(d, c, orientation)
    t = hmap.threshold
    box = hmap.box
    side = 2 * t + 1
    state = bytearray(side * side)  # 0 unknown, 1 escaped, 2 periodic
    cap = side * side + 1
    values = hmap._values
    off = hmap._offset + c  # tbl[y] = values[y + off] gives s(y + c)
    reflected = orientation == "reflected"
    cycles_raw = []
    for x0 in range(-box, box + 1):
        for y0 in range(-box, box + 1):
            if state[(x0 + t) * side + (y0 + t)]:
                continue
            path = []
            x, y = x0, y0
            while True:
                if abs(x) >= t or abs(y) >= t:
                    verdict = 1
                    break
                st = state[(x + t) * side + (y + t)]
                if st == 1:
                    verdict = 1
                    break
                if st == 2:
                    raise InternalConsistencyError(
                        f"unclassified point {path[-1]} stepped into the "
                        f"known cycle point {(x, y)} (d={d}, c={c})")
                if path and x == x0 and y == y0:
                    verdict = 2
                    break
                path.append((x, y))
                if len(path) > cap:
                    raise InternalConsistencyError(
                        f"path from {(x0, y0)} exceeded cap {cap} "
                        f"(d={d}, c={c})")
                if reflected:
                    x, y = -y, x + values[y + off]
                else:
                    x, y = y, -x + values[y + off]
            for px, py in path:
                state[(px + t) * side + (py + t)] = verdict
            if verdict == 2:
                cycles_raw.append(path)

    cycles = []
    for path in cycles_raw:
        k = path.index(min(path))
        pts = tuple(path[k:] + path[:k])
        cycles.append(CycleRecord(pts[0], len(pts), pts))
    cycles.sort(key=lambda r: (r.length, r.representative))

    hist = Counter(r.length for r in cycles)
    full_count = sum(r.length for r in cycles)
    band = (d + 1) // 2 + abs(c)
    central = sum(r.length for r in cycles if r.max_norm() <= band)
    longest = max((r.length for r in cycles), default=0)
    if full_count != sum(n * k for n, k in hist.items()):
        raise InternalConsistencyError("cycle histogram does not add up")
    if c == 0:
        lo, hi = count_bracket(d)
        if not lo <= full_count <= hi:
            raise InternalConsistencyError(
                f"periodic count {full_count} outside proven bracket "
                f"[{lo}, {hi}] at d={d}")
        r = all_periodic_radius_check(d, state, t, side)
        if r is not None:
            raise InternalConsistencyError(
                f"point {r} within the all-periodic radius was classified "
                f"as escaping at d={d}")
    elapsed = int((perf_counter() - started) * 1000) if timings else 0
    return PeriodicReport(d, c, orientation, central, full_count,
                          dict(hist), longest, tuple(cycles), elapsed)


def all_periodic_radius_check(d, state, t, side):
    """Scan the proven all-periodic box; return a counterexample point that
    failed to classify as periodic, or None."""
    r = all_periodic_radius(d)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if state[(x + t) * side + (y + t)] != 2:
                return (x, y)
    return None


def longest_cycle(d: int, c: int = 0) -> int:
    return enumerate_periodic(d, c).longest_cycle


@dataclass(frozen=True)
class SweepRow:
    d: int
    d_mod_6: int
    c: int
    count: int
    longest_cycle: int
    n_cycles: int
    elapsed_ms: int
    expected_count: int | None = None
    expected_longest: int | None = None
    in_fit_range: bool = False

    @property
    def count_matches(self):
        return None if self.expected_count is None \
            else self.count == self.expected_count

    @property
    def longest_matches(self):
        return None if self.expected_longest is None \
            else self.longest_cycle == self.expected_longest


def _sweep_cell(args):
    d, c, orientation, timings = args
    rep = enumerate_periodic(d, c, orientation, timings)
    expected_count = expected_longest = None
    if abs(c) <= 2:
        expected_count = interpolated_count(d, c)
        expected_longest = interpolated_longest(d, c)
    return SweepRow(d, d % 6, c, rep.count, rep.longest_cycle,
                    rep.n_cycles, rep.elapsed_ms, expected_count,
                    expected_longest, FIT_RANGE[0] <= d <= FIT_RANGE[1])


def sweep(d_values, c_values, orientation: str = "standard",
          timings: bool = False, threads: int = 1) -> list:
    """Enumerate every (d, c) cell of the grid and pair each row with the
    fitted formula expectations where those exist (|c| <= 2).

    Rows come back in grid order regardless of worker count. Disagreement
    with the expectations is reported on the row, never raised: outside
    the fit range the formulas are extrapolations.
    """
    ds = sorted(set(int(d) for d in d_values))
    cs = sorted(set(int(c) for c in c_values))
    for d in ds:
        if d % 2 == 0 or d < 3:
            raise ValueError(f"degree must be odd and >= 3, got {d}")
    jobs = [(d, c, orientation, timings) for d in ds for c in cs]
    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_sweep_cell, jobs))
    return [_sweep_cell(job) for job in jobs]


# -- the eight-step ladder -------------------------------------------------

def eight_step_offsets(d: int) -> list:
    """Admissible second coordinates y for the eight-step translation at
    degree d: y = R-1 (mod 6) with -R+1 <= y <= R-7, R = (d+1)/2."""
    if d % 6 != 1 or d < 7:
        raise ValueError(f"degree must be 1 mod 6 and >= 7, got {d}")
    r = (d + 1) // 2
    return [y for y in range(-r + 1, r - 6) if (y - (r - 1)) % 6 == 0]


def eight_step_translation(d: int, y: int) -> bool:
    """Replay the eight-step ladder from (R+1, y) and confirm it lands on
    (R+1, y+6), checking each intermediate rung."""
    r = (d + 1) // 2
    if y not in eight_step_offsets(d):
        raise ValueError(
            f"y={y} is not admissible for d={d}: need y = R-1 mod 6 "
            f"within [-R+1, R-7], R={r}")
    ladder = [
        (r + 1, y), (y, -r - 1), (-r - 1, -y - 2), (-y - 2, r),
        (r, y + 3), (y + 3, -r), (-r, -y - 4), (-y - 4, r + 1),
        (r + 1, y + 6),
    ]
    hmap = HenonMap(d)
    p = ladder[0]
    for expected in ladder[1:]:
        p = hmap.step(p)
        if p != expected:
            return False
    return True


# -- the limit map ---------------------------------------------------------

def limit_step(p):
    """One step of the limit map (x, y) -> (y, -x + wave(y))."""
    x, y = p
    return (y, -x + SIGMA[y % 6])


def limit_inverse_step(p):
    u, v = p
    return (SIGMA[u % 6] - v, u)


_LIMIT_CAP = 10_000


def limit_period(p) -> int:
    """Exact period of an integer point under the limit map (every integer
    point is periodic, with period in {1, 4, 5, 6, 12, 20})."""
    x0, y0 = p
    x, y = limit_step(p)
    n = 1
    while (x, y) != (x0, y0):
        x, y = y, -x + SIGMA[y % 6]
        n += 1
        if n > _LIMIT_CAP:
            raise InternalConsistencyError(
                f"limit-map orbit of {p} did not close within {_LIMIT_CAP}")
    return n


def limit_orbit(p) -> list:
    """The full cycle of p under the limit map, starting at p."""
    out = [tuple(p)]
    q = limit_step(p)
    while q != out[0]:
        out.append(q)
        q = limit_step(q)
        if len(out) > _LIMIT_CAP:
            raise InternalConsistencyError(
                f"limit-map orbit of {p} did not close within {_LIMIT_CAP}")
    return out


def limit_period_table(m: int = 60):
    """Periods of all |x|, |y| <= m under the limit map, folded by residue
    class mod 6.

    Returns (table, exceptions): table[y % 6][x % 6] is the period shared
    by the class (majority value), exceptions maps the points that deviate
    from their class to their true period. An ambiguous class (no clear
    majority) is an internal error, since the period is supposed to be a
    residue invariant away from finitely many points.
    """
    if m < 6:
        raise ValueError(f"range must be >= 6, got {m}")
    by_class = [[Counter() for _ in range(6)] for _ in range(6)]
    periods = {}
    for x in range(-m, m + 1):
        for y in range(-m, m + 1):
            n = limit_period((x, y))
            periods[(x, y)] = n
            by_class[y % 6][x % 6][n] += 1
    table = []
    for row in by_class:
        entries = []
        for counter in row:
            common = counter.most_common(2)
            if len(common) > 1 and common[0][1] == common[1][1]:
                raise InternalConsistencyError(
                    f"no majority period in residue class: {counter}")
            entries.append(common[0][0])
        table.append(tuple(entries))
    table = tuple(table)
    exceptions = {p: n for p, n in sorted(periods.items())
                  if n != table[p[1] % 6][p[0] % 6]}
    return table, exceptions


# -- float experiments on the limit map ------------------------------------

_TWO_OVER_SQRT3 = 2.0 / math.sqrt(3.0)


def _limit_float(x: float, y: float):
    return y, -x + _TWO_OVER_SQRT3 * math.sin(math.pi * y / 3.0)


def hinf_orbit_float(start, epsilon: float, iterations: int,
                     seed: int) -> np.ndarray:
    """Double-precision forward orbit of the limit map from a seeded
    uniform perturbation of start; shape (iterations + 1, 2)."""
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    rng = np.random.default_rng(seed)
    dx, dy = rng.uniform(-epsilon, epsilon, size=2)
    out = np.empty((iterations + 1, 2), dtype=np.float64)
    x, y = float(start[0]) + dx, float(start[1]) + dy
    out[0] = (x, y)
    for i in range(1, iterations + 1):
        x, y = _limit_float(x, y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NumericDivergenceError(
                f"orbit diverged numerically at step {i}")
        out[i] = (x, y)
    return out


def perturbation_atlas(box: int, epsilon: float, iterations: int,
                       seed: int):
    """Stream (base_x, base_y, period_class, step, x, y) rows for one
    perturbed orbit per integer base point in [-box, box]^2.

    Rows are emitted step-major (all bases at step 0, then step 1, ...),
    with bases in row order (y outer, x inner, both ascending), so memory
    stays constant no matter how long the orbits run. The period class is
    the exact limit-map period of the unperturbed base point. Arguments
    are validated before the returned iterator produces anything.
    """
    if box < 0:
        raise ValueError(f"box must be >= 0, got {box}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    bases = [(bx, by) for by in range(-box, box + 1)
             for bx in range(-box, box + 1)]
    classes = [limit_period(b) for b in bases]
    rng = np.random.default_rng(seed)
    noise = rng.uniform(-epsilon, epsilon, size=(len(bases), 2))
    return _atlas_rows(bases, classes, noise, iterations)


def _atlas_rows(bases, classes, noise, iterations):
    xs = np.array([b[0] for b in bases], dtype=np.float64) + noise[:, 0]
    ys = np.array([b[1] for b in bases], dtype=np.float64) + noise[:, 1]
    for step in range(iterations + 1):
        if step:
            xs, ys = ys, -xs + _TWO_OVER_SQRT3 * np.sin(np.pi * ys / 3.0)
            if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
                raise NumericDivergenceError(
                    f"atlas diverged numerically at step {step}")
        for i, (bx, by) in enumerate(bases):
            yield (bx, by, classes[i], step, float(xs[i]), float(ys[i]))
