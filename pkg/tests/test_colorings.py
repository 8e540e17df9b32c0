import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_colorings
from rado.colorings import (
    Coloring,
    ColoringFormatError,
    ColorClassStats,
    class_stats,
    factorial_lemma_check,
    greedy_coloring,
    greedy_intervals,
    read_coloring,
    select_large_colors,
    validate,
    validate_intervals,
    write_coloring,
)
from rado.equations import LinearEquation, find_solution_naive
from rado.search import exact_extremal_N

E = LinearEquation.parse
SCHUR = E("1 1 -1")


def colorings(max_N=12, max_n=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=0, max_size=max_N).map(
            lambda a: Coloring(tuple(a), n)
        )
    )


def test_coloring_rejects_bad_assignments():
    with pytest.raises(ValueError):
        Coloring((1, 3), 2)
    with pytest.raises(ValueError):
        Coloring((), 0)
    with pytest.raises(ValueError):
        Coloring.from_classes([{1, 2}, {2, 3}])
    with pytest.raises(ValueError):
        Coloring.from_classes([{1}, {3}])


def test_from_classes_and_classes_roundtrip():
    c = Coloring.from_classes([{1, 4}, {2, 3}])
    assert c.assignments == (1, 2, 2, 1)
    assert c.classes() == [frozenset({1, 4}), frozenset({2, 3})]
    # empty classes are permitted
    assert Coloring.from_classes([{1, 2}, set()]).classes()[1] == frozenset()


def test_validate_examples():
    assert validate(Coloring.from_classes([{1, 4}, {2, 3}]), SCHUR) is None
    colour, w = validate(Coloring.monochrome(2), SCHUR)
    assert colour == 1 and w.values == (1, 1, 2)
    assert validate(Coloring.monochrome(1), E("1 1 1 -1 -1")) is None


@given(colorings(), st.sampled_from(["1 1 -1", "balanced 3 2", "1 2 -1", "1 1 1 -1"]))
def test_validate_matches_brute_force(c, text):
    eq = E(text)
    expected = None
    for colour, members in enumerate(c.classes(), start=1):
        w = find_solution_naive(eq, members)
        if w is not None:
            expected = (colour, w)
            break
    assert validate(c, eq) == expected
    assert validate(c, eq, threads=3) == expected


def test_greedy_examples():
    c = greedy_coloring(SCHUR, 3)
    assert [sorted(s) for s in c.classes()] == [[1], [2, 3], [4, 5, 6, 7]]
    c = greedy_coloring(E("balanced 3 2"), 2)
    assert c.N == 2 and c.assignments == (1, 2)
    assert greedy_coloring(E("balanced 5 2"), 1).N == 2
    for bad in ["balanced 2 2", "balanced 2 3", "1 2 -1", "-1 1 1"]:
        with pytest.raises(ValueError):
            greedy_coloring(E(bad), 2)


@settings(max_examples=60)
@given(st.integers(2, 12).flatmap(lambda l: st.tuples(st.just(l), st.integers(1, l - 1))), st.integers(1, 15))
def test_greedy_always_valid(lr, n):
    l, r = lr
    eq = E(f"balanced {l} {r}")
    intervals = greedy_intervals(eq, n)
    assert validate_intervals(intervals, eq) is None
    # intervals tile [1..N] in order
    nonempty = [(lo, hi) for lo, hi in intervals if lo <= hi]
    assert nonempty[0][0] == 1
    assert all(b[0] == a[1] + 1 for a, b in zip(nonempty, nonempty[1:]))
    if nonempty[-1][1] <= 3000:
        c = greedy_coloring(eq, n)
        assert c.N == nonempty[-1][1]
        assert validate(c, eq) is None


def test_greedy_is_tight_at_the_boundary():
    # one more integer in the top interval creates a solution
    for l, r, n in [(2, 1, 3), (3, 2, 4), (5, 3, 3)]:
        eq = E(f"balanced {l} {r}")
        intervals = greedy_intervals(eq, n)
        lo, hi = intervals[-1]
        assert validate_intervals(intervals[:-1] + [(lo, hi + 1)], eq) is not None


def test_class_stats_examples():
    s = class_stats(Coloring.from_classes([{1, 4}, {2, 3}]))
    assert s.sizes == (2, 2) and s.sigmas == (2, 0)
    assert class_stats(Coloring.monochrome(5)).sizes == (5,)
    s = class_stats(Coloring.monochrome(3, n=2))
    assert s.sizes == (3, 0) and s.order == (1, 2)


@given(colorings(max_N=20, max_n=5))
def test_class_stats_invariants(c):
    s = class_stats(c)
    assert s.N == c.N
    assert list(s.sizes) == sorted(s.sizes, reverse=True)
    assert all(a >= b for a, b in zip(s.sigmas, s.sigmas[1:]))
    assert sorted(s.order) == list(range(1, c.n + 1))
    classes = c.classes()
    assert all(len(classes[o - 1]) == size for o, size in zip(s.order, s.sizes))


def test_factorial_inequality_examples():
    assert factorial_lemma_check(ColorClassStats((2, 2), (1, 2)), 2)
    assert factorial_lemma_check(ColorClassStats((1,), (1,)), 1)
    assert not factorial_lemma_check(ColorClassStats((100, 1, 0), (1, 2, 3)), 2)
    with pytest.raises(IndexError):
        factorial_lemma_check(ColorClassStats((2, 2), (1, 2)), 3)


def _sum_free_partitions(N, n):
    for a in all_colorings(N, n):
        c = Coloring(a, n)
        if validate(c, SCHUR) is None:
            yield c


def test_factorial_inequality_on_all_small_sum_free_partitions():
    count = 0
    for N in range(1, 10):
        for c in _sum_free_partitions(N, 3):
            s = class_stats(c)
            assert all(factorial_lemma_check(s, k) for k in range(1, 4)), c
            count += 1
    assert count > 0


@pytest.mark.parametrize("n,N", [(3, 13), (4, 30), (5, 30)])
def test_factorial_inequality_on_search_found_partitions(n, N):
    res = exact_extremal_N(SCHUR, n, N)
    c = res.coloring
    assert c.N == N and validate(c, SCHUR) is None
    s = class_stats(c)
    assert all(factorial_lemma_check(s, k) for k in range(1, n + 1))


def test_select_large_colors_examples():
    c = greedy_coloring(SCHUR, 3)
    choice = select_large_colors(class_stats(c), 3, c.N)
    assert choice.k == 1 and choice.size_k == 4 and choice.holds
    assert select_large_colors(class_stats(Coloring.monochrome(4, 2)), 2, 4).k == 1
    big = ColorClassStats(tuple([1] * 5), tuple(range(1, 6)))
    assert select_large_colors(big, 10**10, 5).k == 3
    # 4!^10 = 24^10 is the first n with k = 4
    assert select_large_colors(big, 24**10 - 1, 5).k == 3
    assert select_large_colors(big, 24**10, 5).k == 4


def test_three_two_free_classes_are_sum_free():
    eq32 = E("balanced 3 2")
    for N in range(1, 11):
        for a in itertools.product((1, 2), repeat=N):
            c = Coloring(a, 2)
            if validate(c, eq32) is None:
                assert validate(c, SCHUR) is None


def test_text_roundtrip(tmp_path):
    c = Coloring.from_classes([{1, 4}, {2, 3}, set()])
    path = tmp_path / "c.txt"
    write_coloring(c, path)
    assert read_coloring(path) == c
    assert Coloring.from_text("0 1\n") == Coloring((), 1)


@pytest.mark.parametrize(
    "text,line",
    [("", 1), ("3\n1\n1\n1\n", 1), ("x 2\n", 1), ("2 2\n1\n", 3), ("2 2\n1\nz\n", 3), ("2 2\n3\n1\n", 2)],
)
def test_format_errors_carry_line_numbers(text, line):
    with pytest.raises(ColoringFormatError) as info:
        Coloring.from_text(text)
    assert info.value.line == line
