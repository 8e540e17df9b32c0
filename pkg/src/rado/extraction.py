"""Constructive extraction pipelines over a colouring.

Each pipeline either finds a monochromatic solution or produces a trace of
shrinking working sets ``X_0 >= X_1 >= ...`` with the inequality each step
is supposed to satisfy recorded next to it.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from rado.colorings import Coloring, class_stats, select_large_colors
from rado.diffgraph import (
    DEFAULT_MIS_CAP,
    TARGET_EQUATION,
    DifferenceGraph,
    IndependenceViolation,
    _find_triangle,
    build,
    candidate_independent_sets,
    cycle_to_solution,
    distance_profile,
    find_short_odd_cycle,
    greedy_independent_set,
    max_independent_set_exact,
)
from rado.equations import LinearEquation, SolutionWitness, find_solution_in_set

SCHUR = LinearEquation((1, 1, -1))
THREE_TWO = LinearEquation.balanced(3, 2)

EXHAUSTIVE_SHIFT_LIMIT = 10**6
MAX_SHIFT_SAMPLES = 200_000


@dataclass
class Step:
    index: int
    color: int
    size_in: int
    size_out: int
    bound: float
    bound_holds: bool
    source: str = ""
    edges: int = 0
    # 5 alpha >= 1 + d_1 + d_2 at every vertex; None when alpha is not exact
    anchor_check: Optional[bool] = None
    X_out: tuple[int, ...] = ()


@dataclass
class Certificate:
    """Why a witness was emitted: the structure found and the colour it lives in."""

    kind: str
    color: int
    detail: tuple = ()


@dataclass
class ExtractionTrace:
    method: str
    equation: LinearEquation
    X0: tuple[int, ...]
    steps: list[Step] = field(default_factory=list)
    witness: Optional[SolutionWitness] = None
    witness_color: Optional[int] = None
    certificate: Optional[Certificate] = None
    terminal: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def found_witness(self) -> bool:
        return self.witness is not None

    def final_set(self) -> tuple[int, ...]:
        return self.steps[-1].X_out if self.steps else self.X0

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "equation": self.equation.to_text(),
            "X0_size": len(self.X0),
            "steps": [{k: v for k, v in asdict(s).items() if k != "X_out"} | {"X_out": list(s.X_out)}
                      for s in self.steps],
            "witness": self.witness.to_list() if self.witness else None,
            "witness_color": self.witness_color,
            "certificate": asdict(self.certificate) if self.certificate else None,
            "terminal": self.terminal,
            "notes": self.notes,
        }


# --- classical Schur extraction ---------------------------------------------


def schur_bound(m: int) -> int:
    """``floor(m! * sum_{i<=m} 1/i!)``."""
    return math.floor(math.factorial(m) * sum(Fraction(1, math.factorial(i)) for i in range(m + 1)))


def schur_extract(c: Coloring) -> ExtractionTrace:
    """Monochromatic-triangle extraction for ``x + y = z``.

    Vertices are ``0..N`` so every difference ``1..N`` appears as an edge.
    The anchor is the smallest vertex; ``X_{i+1}`` is its largest
    monochromatic neighbourhood (smallest colour on ties).  An edge of that
    colour inside ``X_{i+1}`` closes a triangle, i.e. a Schur triple.
    """
    X = tuple(range(c.N + 1))
    trace = ExtractionTrace("schur", SCHUR, X)
    n = c.n
    for i in range(n):
        if len(X) <= 1:
            break
        v = X[0]
        by_colour: dict[int, list[int]] = {}
        for u in X[1:]:
            by_colour.setdefault(c.color(u - v), []).append(u)
        colour = max(sorted(by_colour), key=lambda col: len(by_colour[col]))
        nxt = tuple(by_colour[colour])
        bound = (len(X) - 1) / (n - i)
        step = Step(i, colour, len(X), len(nxt), bound, len(nxt) >= bound, "neighbourhood", X_out=nxt)
        trace.steps.append(step)
        for s in nxt:
            for t in nxt:
                if t > s and c.color(t - s) == colour:
                    v1, v2, v3 = sorted((v, s, t))
                    trace.witness = SolutionWitness((v2 - v1, v3 - v2, v3 - v1))
                    trace.witness_color = colour
                    trace.certificate = Certificate("triangle", colour, (v1, v2, v3))
                    trace.terminal = "witness"
                    return trace
        X = nxt
    trace.terminal = "exhausted" if len(X) <= 1 else "colours exhausted"
    # |X_{n-m}| <= floor(m! sum 1/i!) for each recorded level
    sizes = [len(trace.X0)] + [s.size_out for s in trace.steps]
    trace.notes["factorial_chain"] = [sz <= schur_bound(n - i) for i, sz in enumerate(sizes)]
    return trace


# --- Shearer-backed chain ------------------------------------------------------


@dataclass
class ChainConfig:
    mis_cap: int = DEFAULT_MIS_CAP
    anchor_check: bool = True


def _witness_in_class(eq, members, colour, kind, detail, trace) -> ExtractionTrace:
    w = find_solution_in_set(eq, members)
    assert w is not None, f"{kind} in colour {colour} must imply a solution"
    trace.witness = w
    trace.witness_color = colour
    trace.certificate = Certificate(kind, colour, tuple(detail))
    trace.terminal = "witness"
    return trace


def _run_chain(
    trace: ExtractionTrace,
    X: Sequence[int],
    colour_of: Callable[[int], int],
    classes: dict[int, frozenset[int]],
    colours_left: int,
    eq: LinearEquation,
    cfg: ChainConfig,
) -> ExtractionTrace:
    """Iterate: pick the colour with most edges in X, replace X by a large independent set.

    ``colours_left`` is the number of colours that can still occur among
    differences of X; the step bound is ``|X| / (3 sqrt(colours_left + 1 - i))``.
    """
    X = tuple(sorted(X))
    for i in range(colours_left):
        if len(X) <= 1:
            break
        counts: dict[int, int] = {}
        for p, u in enumerate(X):
            for w in X[p + 1:]:
                col = colour_of(w - u)
                counts[col] = counts.get(col, 0) + 1
        colour = max(sorted(counts), key=lambda col: counts[col])
        A = classes[colour]
        G = build(X, A)
        tri = _find_triangle(G)
        if tri is not None:
            return _witness_in_class(eq, A, colour, "triangle", tri, trace)
        best_cand: frozenset[int] = frozenset()
        try:
            for a in G.vertices:
                for depth in (1, 2):
                    fam = candidate_independent_sets(G, A, a, depth).best
                    if len(fam) > len(best_cand):
                        best_cand = fam
        except IndependenceViolation as exc:
            return _witness_in_class(eq, A, colour, "family edge", (exc.family,) + exc.edge, trace)
        options = []
        exact = None
        if len(G) <= cfg.mis_cap:
            exact = max_independent_set_exact(G, cfg.mis_cap)
            options.append(("exact", exact))
        options.append(("candidates", best_cand))
        options.append(("greedy", greedy_independent_set(G)))
        source, chosen = max(options, key=lambda o: len(o[1]))
        anchor_ok = None
        if exact is not None and cfg.anchor_check:
            alpha = len(exact)
            anchor_ok = all(
                5 * alpha >= 1 + sum(distance_profile(G, v, 2)) for v in G.vertices
            )
        bound = len(X) / (3 * math.sqrt(colours_left + 1 - i))
        nxt = tuple(sorted(chosen))
        trace.steps.append(
            Step(i, colour, len(X), len(nxt), bound, len(nxt) >= bound, source,
                 len(G.edges), anchor_ok, nxt)
        )
        X = nxt
    trace.terminal = "exhausted" if len(X) <= 1 else "colours exhausted"
    return trace


def thm3_extract(c: Coloring, cfg: Optional[ChainConfig] = None) -> ExtractionTrace:
    """Chain for ``x_1 + x_2 + x_3 = y_1 + y_2`` on ``X_0 = [1..N]``.

    Every step removes one colour.  A triangle or a non-independent
    signed-sum family certifies a solution in that colour; the emitted
    witness is the class's lexicographically smallest one.
    """
    cfg = cfg or ChainConfig()
    X0 = tuple(range(1, c.N + 1))
    trace = ExtractionTrace("thm3", THREE_TWO, X0)
    classes = {i + 1: s for i, s in enumerate(c.classes())}
    return _run_chain(trace, X0, c.color, classes, c.n, THREE_TWO, cfg)


# --- auxiliary colours and shifts ---------------------------------------------


def _icbrt_floor(v: int) -> int:
    """Largest m with m^3 <= v."""
    m = round(v ** (1 / 3)) if v else 0
    while m**3 > v:
        m -= 1
    while (m + 1) ** 3 <= v:
        m += 1
    return m


def auxiliary_cutoffs(N: int) -> tuple[int, int]:
    """``(floor(2^(1/3) N), floor(2^(2/3) N))`` computed exactly."""
    return _icbrt_floor(2 * N**3), _icbrt_floor(4 * N**3)


def augment_with_auxiliary_colors(c: Coloring) -> Coloring:
    """Extend to [1..2N] with three new colours on ``(N, 2^(1/3)N]``, ``(2^(1/3)N, 2^(2/3)N]``, ``(2^(2/3)N, 2N]``.

    Each new block has ``max < (4/3) min``, so ``12 min > 9 max`` and no
    block contains a solution of the 12-vs-9 equation.
    """
    N, n = c.N, c.n
    f1, f2 = auxiliary_cutoffs(N)
    extra = []
    for x in range(N + 1, 2 * N + 1):
        extra.append(n + 1 if x <= f1 else n + 2 if x <= f2 else n + 3)
    out = Coloring(c.assignments + tuple(extra), n + 3)
    for s in out.classes()[n:]:
        if s:
            assert 12 * min(s) > 9 * max(s), "auxiliary block admits a solution"
    return out


@dataclass
class ShiftIntersection:
    shifts: tuple[int, ...]
    intersection: tuple[int, ...]
    average_bound: Fraction
    method: str

    @property
    def required(self) -> int:
        return math.ceil(self.average_bound)

    def to_dict(self) -> dict:
        return {
            "shifts": list(self.shifts),
            "intersection": list(self.intersection),
            "average_bound": str(self.average_bound),
            "required": self.required,
            "method": self.method,
        }


def _shifted(mask: int, t: int, window: int) -> int:
    return (mask << t if t >= 0 else mask >> -t) & window


def shift_intersection(sets: Sequence[Sequence[int]], N: int, seed: int = 0) -> ShiftIntersection:
    """Shifts ``t_1 = 0, t_2..t_k in [-2N, 2N]`` with a large ``(t_1+S_1) & ... & [1..2N]``.

    The target is the all-shift average ``2N prod|S_i| / (4N+1)^k``.  Small
    instances are searched exhaustively (best tuple, lexicographically
    first on ties); larger ones by seeded sampling, falling back to
    choosing the shifts one at a time, each maximising the running
    intersection, which meets the average by conditional expectation.
    """
    k = len(sets)
    if k < 1 or any(not s for s in sets):
        raise ValueError("need at least one set and no empty sets")
    M = 2 * N
    # bit x  <=>  integer x, x in [1..2N]
    window = ((1 << M) - 1) << 1
    masks = []
    for s in sets:
        m = 0
        for x in s:
            if not 1 <= x <= M:
                raise ValueError(f"{x} outside [1..{M}]")
            m |= 1 << x
        masks.append(m)
    avg = Fraction(M * math.prod(len(s) for s in sets), (2 * M + 1) ** k)
    need = math.ceil(avg)
    shifts_range = range(-M, M + 1)

    def result(shifts, mask, method):
        members = tuple(x for x in range(1, M + 1) if mask >> x & 1)
        return ShiftIntersection(tuple(shifts), members, avg, method)

    if k == 1:
        return result((0,), masks[0], "identity")

    if (2 * M + 1) ** (k - 1) <= EXHAUSTIVE_SHIFT_LIMIT:
        best = [-1, None, 0]

        def dfs(j, cur, shifts):
            if j == k:
                size = bin(cur).count("1")
                if size > best[0]:
                    best[0], best[1], best[2] = size, list(shifts), cur
                return
            if bin(cur).count("1") <= best[0]:
                return
            for t in shifts_range:
                shifts.append(t)
                dfs(j + 1, cur & _shifted(masks[j], t, window), shifts)
                shifts.pop()

        dfs(1, masks[0], [0])
        return result(best[1], best[2], "exhaustive")

    rng = random.Random(seed)
    for _ in range(MAX_SHIFT_SAMPLES):
        shifts = [0] + [rng.randint(-M, M) for _ in range(k - 1)]
        cur = masks[0]
        for j in range(1, k):
            cur &= _shifted(masks[j], shifts[j], window)
        if bin(cur).count("1") >= need:
            return result(shifts, cur, "sampled")
    shifts = [0]
    cur = masks[0]
    for j in range(1, k):
        t_best = max(shifts_range, key=lambda t: bin(cur & _shifted(masks[j], t, window)).count("1"))
        shifts.append(t_best)
        cur &= _shifted(masks[j], t_best, window)
    return result(shifts, cur, "greedy")


# --- long-equation pipeline ------------------------------------------------------


@dataclass
class Thm4Report:
    trace: ExtractionTrace
    phases: list[dict] = field(default_factory=list)

    @property
    def witness(self) -> Optional[SolutionWitness]:
        return self.trace.witness

    def phase(self, name: str) -> Optional[dict]:
        for p in self.phases:
            if p["phase"] == name:
                return p
        return None

    def to_dict(self) -> dict:
        return {"phases": self.phases, "trace": self.trace.to_dict()}


def _large_color_independent_set(G: DifferenceGraph, A, cfg: ChainConfig):
    if len(G) <= cfg.mis_cap:
        return max_independent_set_exact(G, cfg.mis_cap), "exact"
    best = greedy_independent_set(G)
    source = "greedy"
    for a in G.vertices:
        fam = candidate_independent_sets(G, A, a, 3).best
        if len(fam) > len(best):
            best, source = fam, "candidates"
    return best, source


def thm4_pipeline(c: Coloring, seed: int = 0, cfg: Optional[ChainConfig] = None) -> Thm4Report:
    """Pipeline for ``x_1 + ... + x_12 = y_1 + ... + y_9``.

    Phases: auxiliary colours on (N, 2N]; choose the k largest colours;
    check their graphs on [1..2N] for 3- and 5-cycles; independent sets
    S_1..S_k; shift-intersect them; normalise to X = {s_j - s_1}; run the
    chain on X with the colours that remain.
    """
    cfg = cfg or ChainConfig()
    eq = TARGET_EQUATION
    N, n = c.N, c.n
    trace = ExtractionTrace("thm4", eq, tuple(range(1, N + 1)))
    report = Thm4Report(trace)
    if N == 0:
        trace.terminal = "exhausted"
        return report

    aug = augment_with_auxiliary_colors(c)
    aug_classes = {i + 1: s for i, s in enumerate(aug.classes())}
    f1, f2 = auxiliary_cutoffs(N)
    report.phases.append({
        "phase": "augment",
        "N": N,
        "cutoffs": [f1, f2],
        "aux_sizes": [len(aug_classes[n + j]) for j in (1, 2, 3)],
    })

    stats = class_stats(c)
    choice = select_large_colors(stats, max(n, 2), N)
    k = min(choice.k, n)
    large = list(stats.order[:k])
    report.phases.append({
        "phase": "large_colours",
        "k": k,
        "colours": large,
        "sizes": list(stats.sizes[:k]),
        "large_class_bound_holds": choice.holds,
    })

    vertices = range(1, 2 * N + 1)
    graphs = {}
    degree_claim = {}
    for col in large:
        A = aug_classes[col]
        G = build(vertices, A)
        cycle = find_short_odd_cycle(G)
        if cycle is not None:
            trace.witness = cycle_to_solution(cycle, A)
            trace.witness_color = col
            trace.certificate = Certificate(f"C{len(cycle)}", col, cycle)
            trace.terminal = "witness"
            report.phases.append({"phase": "girth", "colour": col, "cycle": list(cycle)})
            return report
        graphs[col] = G
        degree_claim[col] = all(G.degree(a) >= len(A) for a in range(1, N + 1))
    report.phases.append({"phase": "girth", "cycle": None, "degree_claim": degree_claim})

    sets = []
    sources = {}
    for col in large:
        try:
            S, src = _large_color_independent_set(graphs[col], aug_classes[col], cfg)
        except IndependenceViolation as exc:
            _witness_in_class(eq, aug_classes[col], col, "family edge", (exc.family,) + exc.edge, trace)
            report.phases.append({"phase": "independent_sets", "violation": col})
            return report
        sets.append(sorted(S))
        sources[col] = src
    report.phases.append({
        "phase": "independent_sets",
        "sizes": [len(s) for s in sets],
        "sources": sources,
    })

    shift = shift_intersection(sets, N, seed)
    report.phases.append({"phase": "shift"} | shift.to_dict())

    S = shift.intersection
    X = tuple(s - S[0] for s in S[1:]) if S else ()
    clash = [(x, aug.color(x)) for x in X if aug.color(x) in large]
    phase6 = {"phase": "normalise", "X": list(X), "free_of_large": not clash}
    if clash:
        x, col = clash[0]
        j = large.index(col)
        t = shift.shifts[j]
        phase6["contradiction"] = {"colour": col, "edge": [S[0] - t, S[0] + x - t]}
    report.phases.append(phase6)
    if clash:
        trace.terminal = "phase 6 violation"
        return report

    remaining = (n + 3) - k
    _run_chain(trace, X, aug.color, aug_classes, remaining, eq, cfg)
    report.phases.append({
        "phase": "chain",
        "colours_left": remaining,
        "steps": len(trace.steps),
        "all_bounds_hold": all(s.bound_holds for s in trace.steps),
        "terminal": trace.terminal,
    })
    return report
