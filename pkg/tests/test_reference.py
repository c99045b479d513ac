import pytest

from henonlat.reference import (FIT_RANGE, LIMIT_EXCEPTIONS,
                                LIMIT_PERIOD_TABLE, PERIOD_CLASS_COLORS,
                                PERIODIC_COUNTS, all_periodic_radius,
                                count_bracket, interpolated_count,
                                interpolated_longest)


def test_published_counts_table():
    assert PERIODIC_COUNTS == {7: 49, 9: 89, 11: 105, 13: 153, 15: 233,
                               17: 257, 19: 329}


def test_count_bracket():
    assert count_bracket(7) == (9, 169)
    assert count_bracket(19) == (225, 625)


@pytest.mark.parametrize("d,c,count,longest", [
    # one cell per formula branch of the fitted tables
    (19, 0, 329, 54),       # d = 1 mod 6, c = 0
    (19, 1, 403, 61),       # d = 1 mod 6, |c| = 1
    (19, -2, 265, 81),      # d = 1 mod 6, |c| = 2
    (21, 0, 449, 20),       # d = 3 mod 6, c = 0
    (21, -1, 525, 129),     # d = 3 mod 6, c = -1
    (21, 1, 526, 129),      # d = 3 mod 6, c = +1
    (21, 2, 364, 60),       # d = 3 mod 6, |c| = 2
    (17, 0, 257, 20),       # d = 5 mod 6, c = 0
    (17, -1, 284, 69),      # d = 5 mod 6, |c| = 1
    (17, 2, 218, 97),       # d = 5 mod 6, |c| = 2
    (15, 1, 286, 81),
    (19, 2, 265, 81),
    (13, 1, 199, 41),       # extrapolation below the fit range
])
def test_fitted_formulas(d, c, count, longest):
    assert interpolated_count(d, c) == count
    assert interpolated_longest(d, c) == longest


def test_fit_range():
    assert FIT_RANGE == (15, 299)


def test_fitted_formulas_reject_large_shift():
    with pytest.raises(ValueError):
        interpolated_count(19, 3)
    with pytest.raises(ValueError):
        interpolated_longest(19, -3)


@pytest.mark.parametrize("d,radius", [
    (3, 0), (5, 0), (7, 4), (9, 3), (11, 3), (13, 7), (31, 16), (61, 31),
])
def test_all_periodic_radius(d, radius):
    assert all_periodic_radius(d) == radius


def test_limit_table_shape():
    assert len(LIMIT_PERIOD_TABLE) == 6
    assert all(len(row) == 6 for row in LIMIT_PERIOD_TABLE)
    values = {v for row in LIMIT_PERIOD_TABLE for v in row}
    assert values == {4, 12, 20}


def test_limit_table_rows():
    assert LIMIT_PERIOD_TABLE[0] == (4, 12, 20, 4, 20, 12)
    assert LIMIT_PERIOD_TABLE[3] == (4, 20, 12, 4, 12, 20)


def test_limit_exceptions():
    assert len(LIMIT_EXCEPTIONS) == 17
    assert LIMIT_EXCEPTIONS[(0, 0)] == 1
    assert sorted(set(LIMIT_EXCEPTIONS.values())) == [1, 5, 6]
    fives = [p for p, n in LIMIT_EXCEPTIONS.items() if n == 5]
    sixes = [p for p, n in LIMIT_EXCEPTIONS.items() if n == 6]
    assert len(fives) == 10 and len(sixes) == 6
    # every exception sits inside the 2-ball
    assert all(max(abs(x), abs(y)) <= 2 for x, y in LIMIT_EXCEPTIONS)


def test_period_class_colors_cover_classes():
    assert set(PERIOD_CLASS_COLORS) == {1, 4, 5, 6, 12, 20}
