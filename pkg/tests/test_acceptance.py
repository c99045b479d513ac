"""Acceptance suite: one test per published claim the package must
reproduce, each with its wall-clock budget. Run with -v for the
one-line-per-criterion view.

test_c06 is expected to fail: the fitted count formula for the c = -1
column of the d = 3 mod 6 residue class disagrees with exhaustive
enumeration by exactly one on all eight such degrees in the grid. The
map (x, y) -> (-x, -y) conjugates the c shift to the -c shift, so the
true counts at c = -1 and c = +1 are equal; the published c = -1 formula
is one short. The test asserts the formulas as published and reports the
cells.
"""

import time

from henonlat.analysis import (convergence_report, escape_radius_exceptions,
                               optimal_compression_search,
                               padic_escape_check, preperiodic_integers,
                               real_escape_check, verify_cd_bounds,
                               verify_monotonicity, verify_sigma_agreement,
                               verify_tail_growth)
from henonlat.cli import main as cli_main
from henonlat.dynamics import (HenonMap, Periodic, classify,
                               eight_step_offsets, eight_step_translation,
                               enumerate_periodic, limit_period_table,
                               longest_cycle, sweep)
from henonlat.polyfamily import compressing_poly
from henonlat.reference import (LIMIT_EXCEPTIONS, LIMIT_PERIOD_TABLE,
                                PERIODIC_COUNTS, all_periodic_radius,
                                count_bracket, interpolated_count,
                                interpolated_longest)


def _finish(tag, failures, t0, budget, detail=""):
    elapsed = time.monotonic() - t0
    status = "PASS" if not failures else "FAIL"
    print(f"[{tag}] {status} {detail} ({elapsed:.2f}s)")
    assert not failures, f"{tag}: {failures}"
    assert elapsed < budget, f"{tag} exceeded {budget}s budget: {elapsed:.2f}s"


def test_c01_interval_compression():
    """r_d maps [1..d+6] into [1..d+5] (even d) / [1..d+4] (odd d)."""
    t0 = time.monotonic()
    failures = []
    for d in range(2, 21):
        hi = d + 5 if d % 2 == 0 else d + 4
        r = compressing_poly(d)
        for x in range(1, d + 7):
            v = r(x)
            if v.denominator != 1 or not 1 <= v <= hi:
                failures.append((d, x, v))
    _finish("C01", failures, t0, 1.0, "compression bands d=2..20")


def test_c02_wave_agreement():
    """The degree-d family equals the 6-periodic wave on its central
    band for every d up to 200."""
    t0 = time.monotonic()
    failures = [(d, rep.counterexample)
                for d in range(1, 201)
                for rep in [verify_sigma_agreement(d)] if not rep.passed]
    _finish("C02", failures, t0, 30.0, "wave agreement d=1..200")


def test_c03_published_counts():
    t0 = time.monotonic()
    failures = []
    for d, expected in PERIODIC_COUNTS.items():
        rep = enumerate_periodic(d)
        lo, hi = count_bracket(d)
        if rep.count != expected:
            failures.append((d, rep.count, expected))
        if not lo <= rep.count <= hi:
            failures.append((d, rep.count, (lo, hi)))
    _finish("C03", failures, t0, 5.0, "central-band counts d=7..19")


def test_c04_all_periodic_radius():
    """Every lattice point within the all-periodic radius is periodic."""
    t0 = time.monotonic()
    failures = []
    for d in range(3, 32, 2):
        h = HenonMap(d)
        radius = all_periodic_radius(d)
        for x in range(-radius, radius + 1):
            for y in range(-radius, radius + 1):
                if not isinstance(classify(h, (x, y)), Periodic):
                    failures.append((d, x, y))
    _finish("C04", failures, t0, 10.0, "all-periodic radius d=3..31")


def test_c05_longest_cycles():
    t0 = time.monotonic()
    failures = []
    for d in (7, 13, 19, 25, 31):
        expected = (8 * d + 10) // 3
        got = longest_cycle(d)
        if got != expected:
            failures.append((d, got, expected))
    for d in (9, 11, 15, 17, 21, 23):
        got = longest_cycle(d)
        if got != 20:
            failures.append((d, got, 20))
    _finish("C05", failures, t0, 10.0, "longest cycles at c=0")


def test_c06_shifted_grid_formulas():
    """Counts and longest cycles across the (d, c) grid match the
    published fitted formulas. Known to fail on the eight d = 3 mod 6,
    c = -1 cells; see the module docstring."""
    t0 = time.monotonic()
    rows = sweep(list(range(15, 62, 2)), [-2, -1, 0, 1, 2])
    assert len(rows) == 120
    failures = []
    for row in rows:
        if row.count != interpolated_count(row.d, row.c):
            failures.append(("count", row.d, row.c, row.count,
                             interpolated_count(row.d, row.c)))
        if row.longest_cycle != interpolated_longest(row.d, row.c):
            failures.append(("longest", row.d, row.c, row.longest_cycle,
                             interpolated_longest(row.d, row.c)))
    elapsed = time.monotonic() - t0
    status = "PASS" if not failures else "FAIL"
    print(f"[C06] {status} shifted-grid formulas, {len(failures)}/240 "
          f"mismatches ({elapsed:.2f}s)")
    assert elapsed < 120.0
    assert not failures, (
        "enumerated (kind, d, c, true, formula) mismatches: "
        f"{failures}; (x,y) -> (-x,-y) conjugates shift c to -c, so "
        "count(-1) must equal count(+1) = d^2+4d+1 on d = 3 mod 6; the "
        "published d^2+4d is one short on every such degree")


def test_c07_eight_step_translation():
    """Eight steps translate the right-edge ladder points up by six."""
    t0 = time.monotonic()
    failures = []
    for d in (7, 13, 19, 25):
        offsets = eight_step_offsets(d)
        if not offsets:
            failures.append((d, "no admissible offsets"))
        for y in offsets:
            if not eight_step_translation(d, y):
                failures.append((d, y))
    _finish("C07", failures, t0, 5.0, "eight-step ladders d=7,13,19,25")


def test_c08_limit_period_table():
    t0 = time.monotonic()
    table, exceptions = limit_period_table(60)
    failures = []
    if table != LIMIT_PERIOD_TABLE:
        failures.append(("table", table))
    if exceptions != LIMIT_EXCEPTIONS:
        failures.append(("exceptions", exceptions))
    periods = sorted(exceptions.values())
    if periods != [1] + [5] * 10 + [6] * 6:
        failures.append(("period multiset", periods))
    _finish("C08", failures, t0, 1.0, "limit-map residue table at 60")


def test_c09_bound_certificates():
    """Grid certificates: the four bound checks on d=4..100 with
    strictly positive margins, tail growth and strict monotonicity on
    d=3..50. The tail margin is 0 exactly at its base case (d=3, x=5)
    and positive everywhere else."""
    t0 = time.monotonic()
    failures = []
    for d in range(4, 101):
        for which in ("cd_sup", "cd_sup_inner", "cd_deriv",
                      "cd_deriv_inner"):
            rep = verify_cd_bounds(d, which)
            if not rep.passed:
                failures.append((which, d, "failed"))
            elif rep.samples and rep.worst_margin <= 0:
                failures.append((which, d, rep.worst_margin))
    for d in range(3, 51):
        tail = verify_tail_growth(d)
        if not tail.passed:
            failures.append(("tail", d))
        expected_zero = d == 3
        if (tail.worst_margin == 0) != expected_zero:
            failures.append(("tail margin", d, tail.worst_margin))
        mono = verify_monotonicity(d)
        if not mono.passed or mono.worst_margin <= 0:
            failures.append(("monotone", d))
    _finish("C09", failures, t0, 60.0, "bound certificates on the full grids")


def test_c10_escape_certificates():
    t0 = time.monotonic()
    failures = []
    for d in range(2, 21):
        if not real_escape_check(d).passed:
            failures.append(("real", d))
        if preperiodic_integers(d) != set(range(1, d + 7)):
            failures.append(("preperiodic", d))
        for p in (2, 3, 5, 7):
            rep = padic_escape_check(d, p)
            if not rep.passed or len(rep.samples) != 200:
                failures.append(("padic", d, p))
    scan = escape_radius_exceptions(299, 100)
    if scan != [(2, 3)]:
        failures.append(("exception scan", scan))
    _finish("C10", failures, t0, 30.0, "escape certificates")


def test_c11_search_optimality():
    t0 = time.monotonic()
    failures = []
    texts = [p.as_text()
             for p in optimal_compression_search(2, 8).polynomials]
    if texts != ["x^2/2 - 9x/2 + 11", "x^2/2 - 9x/2 + 12"]:
        failures.append((2, 8, texts))
    if optimal_compression_search(2, 9).polynomials != ():
        failures.append((2, 9, "expected empty"))
    texts = [p.as_text()
             for p in optimal_compression_search(3, 11).polynomials]
    if texts != ["x^3/6 - 3x^2 + 89x/6 - 11"]:
        failures.append((3, 11, texts))
    if optimal_compression_search(3, 12).polynomials != ():
        failures.append((3, 12, "expected empty"))
    _finish("C11", failures, t0, 5.0, "compression search optima")


def test_c12_wave_convergence():
    t0 = time.monotonic()
    rep = convergence_report(k_max=30)
    sine = rep.errors["sine"]
    failures = []
    if not sine[5] <= 1e-8:
        failures.append(("final error", sine[5]))
    if not sine[5] < sine[1]:
        failures.append(("no decrease", sine[1], sine[5]))
    if not sine[0] > sine[1] > sine[2]:
        failures.append(("early decrease", sine[:3]))
    _finish("C12", failures, t0, 5.0,
            f"sup error {sine[1]:.3e} -> {sine[5]:.3e}")


def test_c13_determinism(tmp_path):
    t0 = time.monotonic()
    failures = []
    pairs = []
    for name, argv in (
        ("sweep", ["sweep", "--d", "7,9,11", "--c=-2:2"]),
        ("atlas", ["hinf", "atlas", "--box", "4", "--eps", "1e-3",
                   "--iters", "500", "--seed", "1"]),
    ):
        a = tmp_path / f"{name}_a.csv"
        b = tmp_path / f"{name}_b.csv"
        assert cli_main(argv + ["--out", str(a)]) == 0
        assert cli_main(argv + ["--out", str(b)]) == 0
        pairs.append((name, a, b))
    for name, a, b in pairs:
        if a.read_bytes() != b.read_bytes():
            failures.append(name)
    _finish("C13", failures, t0, 60.0, "byte-identical repeat runs")
