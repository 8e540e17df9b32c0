"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line."""

import random
import time

from helpers import all_colorings, all_subsets
from rado.colorings import Coloring, greedy_coloring, greedy_intervals, validate, validate_intervals
from rado.diffgraph import (
    BOUND_TOL,
    build,
    cycle_to_solution,
    find_short_odd_cycle,
    independence_number,
    odd_girth,
    shearer_girth_bound,
    shearer_triangle_free_bound,
)
from rado.equations import (
    LinearEquation,
    check_solution,
    extend_solution,
    find_solution_in_set,
    find_solution_naive,
)
from rado.extraction import (
    augment_with_auxiliary_colors,
    schur_extract,
    shift_intersection,
    thm3_extract,
    thm4_pipeline,
)
from rado.recoloring import run_recoloring
from rado.search import exact_extremal_N, is_partitionable

E = LinearEquation.parse
SCHUR = E("1 1 -1")
EQ_3_2 = LinearEquation.balanced(3, 2)
EQ_12_9 = LinearEquation.balanced(12, 9)
EXPLICIT_LIMIT = 5000


def test_criterion_01_schur_values(criterion):
    details, ok = [], True
    for n, expected in [(1, 1), (2, 4), (3, 13)]:
        start = time.perf_counter()
        res = exact_extremal_N(SCHUR, n, 100)
        elapsed = time.perf_counter() - start
        certificate = is_partitionable(SCHUR, n, expected + 1) is None
        ok &= res.largest_valid_N == expected and res.certified and certificate
        ok &= validate(res.coloring, SCHUR) is None
        if n == 3:
            ok &= elapsed < 300
        details.append(f"n={n}: N={res.largest_valid_N} ({elapsed:.3f}s)")
    criterion(1, "exact Schur values 1, 4, 13 with failure certificates", ok, "; ".join(details))


def test_criterion_02_greedy_validity(criterion):
    ok, checked = True, 0
    for l in range(2, 7):
        for r in range(1, l):
            eq = LinearEquation.balanced(l, r)
            for n in range(1, 13):
                intervals = greedy_intervals(eq, n)
                N = max(hi for _, hi in intervals)
                if N <= EXPLICIT_LIMIT:
                    c = greedy_coloring(eq, n)
                    ok &= c.N == N and validate(c, eq) is None
                else:
                    ok &= validate_intervals(intervals, eq) is None
                checked += 1
    for n in range(1, 13):
        ok &= max(hi for _, hi in greedy_intervals(SCHUR, n)) == 2**n - 1
        ok &= greedy_coloring(SCHUR, n).N == 2**n - 1
    criterion(2, "greedy colourings validate; (2,1) covers 2^n - 1", ok, f"{checked} (l,r,n) cases")


def test_criterion_03_triangle_free_shearer(criterion):
    ok, count, worst = True, 0, float("inf")
    for A in all_subsets(range(1, 13)):
        if find_solution_in_set(EQ_3_2, A) is not None:
            continue
        G = build(range(1, 25), A)
        cyc = find_short_odd_cycle(G)
        if cyc is not None and len(cyc) == 3:
            ok = False
            continue
        bound = shearer_triangle_free_bound(G)
        alpha = independence_number(G)
        ok &= alpha >= bound - BOUND_TOL
        worst = min(worst, alpha - bound)
        count += 1
    criterion(3, "(3,2)-free A in [1..12]: triangle-free and alpha >= Shearer bound", ok,
              f"{count} sets, min slack {worst:.4f}")


def _random_girth_instance(rng):
    while True:
        A = rng.sample(range(1, 25), rng.randint(1, 4))
        V = rng.sample(range(1, 61), rng.randint(2, 40))
        G = build(V, A)
        g = odd_girth(G)
        if g is None or g >= 7:
            return G, g


def test_criterion_04_girth_shearer(criterion):
    c7 = shearer_girth_bound(build(range(1, 8), {1, 6}), 2)
    c9 = shearer_girth_bound(build(range(1, 10), {1, 8}), 3)
    ok = abs(c7 - 2.8) <= 1e-6 and c7 <= 3 and abs(c9 - 3.402) <= 1e-3 and c9 <= 4
    ok &= abs(c9 - 9 / 7**0.5) <= 1e-6
    rng = random.Random(20240)
    m3_checked = 0
    for _ in range(200):
        G, g = _random_girth_instance(rng)
        alpha = independence_number(G)
        ok &= shearer_girth_bound(G, 2) <= alpha + BOUND_TOL
        if g is None or g >= 9:
            ok &= shearer_girth_bound(G, 3) <= alpha + BOUND_TOL
            m3_checked += 1
    criterion(4, "odd-girth Shearer bound: C7 = 2.8, C9 ~ 3.402, 200 random instances", ok,
              f"C7={c7:.6f} C9={c9:.6f}, m=3 also on {m3_checked}")


def test_criterion_05_short_cycles_to_solutions(criterion):
    ok, cycles, free = True, 0, 0
    for A in all_subsets(range(1, 11)):
        G = build(range(1, 21), A)
        cyc = find_short_odd_cycle(G)
        if cyc is not None:
            w = cycle_to_solution(cyc, A)
            ok &= check_solution(EQ_12_9, w) and set(w.values) <= set(A)
            cycles += 1
        if find_solution_in_set(EQ_12_9, A) is None:
            ok &= cyc is None
            free += 1
    criterion(5, "C3/C5 on [1..20] gives a checked (12,9) witness; (12,9)-free A have none", ok,
              f"{cycles} cycle sets, {free} solution-free sets")


def test_criterion_06_extensions(criterion):
    rng = random.Random(6)
    ok, done = True, 0
    while done < 1000:
        l, r = rng.randint(1, 5), rng.randint(1, 5)
        eq = LinearEquation.balanced(l, r)
        A = rng.sample(range(1, 20), rng.randint(1, 6))
        w = find_solution_in_set(eq, A)
        if w is None:
            continue
        t, pad = rng.randint(1, 5), rng.randint(0, 5)
        big, ext = extend_solution(eq, w, t, pad)
        ok &= big.balanced_form == (l * t + pad, r * t + pad) and check_solution(big, ext)
        done += 1
    criterion(6, "1000 seeded extensions pass check_solution", ok, f"{done} extensions")


def test_criterion_07_three_two_chain(criterion):
    ok, info = True, []
    for n in (2, 3, 4):
        c = greedy_coloring(EQ_3_2, n)
        t = thm3_extract(c)
        ok &= t.witness is None and bool(t.steps)
        ok &= all(s.source == "exact" and s.bound_holds and s.anchor_check for s in t.steps)
        ok &= len(t.final_set()) <= 1
        info.append(f"n={n}: sizes {[t.steps[0].size_in] + [s.size_out for s in t.steps]}")
    criterion(7, "chain inequalities on greedy (3,2) colourings, terminal |X| <= 1", ok, "; ".join(info))


def test_criterion_08_schur_extraction(criterion):
    ok, count = True, 0
    for a in all_colorings(5, 2):
        c = Coloring(a, 2)
        t = schur_extract(c)
        ok &= t.witness is not None and check_solution(SCHUR, t.witness)
        ok &= t.witness is not None and len({c.color(x) for x in t.witness.values}) == 1
        count += 1
    criterion(8, "schur_extract finds a witness in every 2-colouring of [1..5]", ok, f"{count} colourings")


def _pipeline_inputs():
    eq43 = LinearEquation.balanced(4, 3)
    for n in range(1, 5):
        yield greedy_coloring(eq43, n)
        yield greedy_coloring(LinearEquation.balanced(5, 4), n)
    for n in (2, 3):
        yield exact_extremal_N(EQ_12_9, n, 40).coloring
    for N in range(1, 11):
        for a in all_colorings(N, 2):
            yield Coloring(a, 2)
    rng = random.Random(9)
    for _ in range(300):
        yield Coloring(tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 16))), 3)


def test_criterion_09_long_equation_phases(criterion):
    ok = True
    for N in range(1, 101):
        aug = augment_with_auxiliary_colors(Coloring.monochrome(N))
        ok &= all(find_solution_in_set(EQ_12_9, s) is None for s in aug.classes()[1:])
    rng = random.Random(1234)
    for _ in range(500):
        N = rng.randint(1, 12)
        k = rng.randint(1, 4)
        sets = [rng.sample(range(1, 2 * N + 1), rng.randint(1, 2 * N)) for _ in range(k)]
        res = shift_intersection(sets, N, seed=rng.randrange(2**32))
        ok &= len(res.intersection) >= res.required
    reached = 0
    for c in _pipeline_inputs():
        rep = thm4_pipeline(c, seed=0)
        norm = rep.phase("normalise")
        if norm is None:
            ok &= rep.witness is not None and check_solution(EQ_12_9, rep.witness)
            continue
        reached += 1
        large = set(rep.phase("large_colours")["colours"])
        aug = augment_with_auxiliary_colors(c)
        ok &= norm["free_of_large"] and all(aug.color(x) not in large for x in norm["X"])
    ok &= reached > 0
    criterion(9, "auxiliary classes free; shifts meet average; normalised X avoids large colours", ok,
              f"phase 6 reached on {reached} colourings")


def test_criterion_10_recoloring(criterion):
    rng = random.Random(10)
    ok, witnesses = True, 0
    for method in ("sum3", "coeff2", "imbalanced"):
        for _ in range(1000):
            n = rng.randint(1, 3)
            N = rng.randint(1, 30)
            c = Coloring(tuple(rng.randint(1, n) for _ in range(N)), n)
            l = rng.randint(3, 8) if method == "imbalanced" else None
            rep = run_recoloring(c, method, l)
            ok &= rep.steps <= N
            for (i, _), members in rep.state.cells.items():
                ok &= all(c.color(x) == i for x in members)
            if rep.witness is not None:
                ok &= check_solution(rep.equation, rep.witness)
                ok &= {c.color(x) for x in rep.witness.values} == {rep.color}
                witnesses += 1
    threshold = exact_extremal_N(SCHUR, 2, 20).largest_valid_N + 1
    for N in range(threshold, 101):
        ok &= run_recoloring(Coloring.monochrome(N), "sum3").outcome == "witness"
    criterion(10, "recolouring witnesses sound, moves <= N, sum3 complete from the 2-colour Schur threshold",
              ok, f"{witnesses} witnesses; threshold N={threshold}")


ORACLE_EQUATIONS = ["1 1 -1", "1 1 -2", "1 2 -1", "2 2 -1", "1 1 1 -1", "balanced 3 2",
                    "1 2 1 -1 -1", "1 1 -1 -1", "balanced 4 1", "1 3 -2", "1 -1"]


def test_criterion_11_oracle_equivalence(criterion):
    ok, count = True, 0
    for text in ORACLE_EQUATIONS:
        eq = E(text)
        assert len(eq) <= 5
        for A in all_subsets(range(1, 13)):
            expected = find_solution_naive(eq, A)
            ok &= find_solution_in_set(eq, A, method="mitm") == expected
            ok &= find_solution_in_set(eq, A) == expected
            count += 1
    criterion(11, "meet-in-the-middle agrees with naive enumeration on all A in [1..12]", ok,
              f"{len(ORACLE_EQUATIONS)} equations, {count} cases")
