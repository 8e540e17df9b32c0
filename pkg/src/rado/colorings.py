"""Colourings of {1..N}: validation, greedy constructions and class statistics."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from rado.equations import (
    LinearEquation,
    SolutionWitness,
    find_solution_in_interval,
    find_solution_in_set,
)


class ColoringFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


@dataclass(frozen=True)
class Coloring:
    """``assignments[x - 1]`` is the colour (1..n) of integer ``x``."""

    assignments: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "assignments", tuple(int(c) for c in self.assignments))
        if self.n < 1:
            raise ValueError("need at least one colour")
        for x, c in enumerate(self.assignments, start=1):
            if not 1 <= c <= self.n:
                raise ValueError(f"integer {x} has colour {c} outside 1..{self.n}")

    @classmethod
    def from_classes(cls, classes, N: Optional[int] = None) -> Coloring:
        """Build from a list of sets; class ``i`` (0-based) gets colour ``i + 1``."""
        classes = [set(s) for s in classes]
        if N is None:
            N = max((max(s) for s in classes if s), default=0)
        assignments = [0] * N
        for colour, members in enumerate(classes, start=1):
            for x in members:
                if not 1 <= x <= N:
                    raise ValueError(f"{x} outside 1..{N}")
                if assignments[x - 1]:
                    raise ValueError(f"{x} appears in two classes")
                assignments[x - 1] = colour
        missing = [x for x, c in enumerate(assignments, start=1) if c == 0]
        if missing:
            raise ValueError(f"uncoloured integers: {missing[:10]}")
        return cls(tuple(assignments), len(classes))

    @classmethod
    def monochrome(cls, N: int, n: int = 1) -> Coloring:
        return cls((1,) * N, n)

    @property
    def N(self) -> int:
        return len(self.assignments)

    def color(self, x: int) -> int:
        return self.assignments[x - 1]

    def classes(self) -> list[frozenset[int]]:
        """Colour classes in colour order; ``classes()[i - 1]`` is colour ``i``."""
        buckets: list[list[int]] = [[] for _ in range(self.n)]
        for x, c in enumerate(self.assignments, start=1):
            buckets[c - 1].append(x)
        return [frozenset(b) for b in buckets]

    def to_text(self) -> str:
        lines = [f"{self.N} {self.n}"] + [str(c) for c in self.assignments]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Coloring:
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise ColoringFormatError("missing header 'N n'", 1)
        header = lines[0].split()
        if len(header) != 2:
            raise ColoringFormatError(f"header must be 'N n', got {lines[0]!r}", 1)
        try:
            N, n = int(header[0]), int(header[1])
        except ValueError:
            raise ColoringFormatError(f"non-integer header {lines[0]!r}", 1) from None
        if N < 0 or n < 1:
            raise ColoringFormatError(f"invalid header N={N} n={n}", 1)
        body = lines[1:]
        while body and not body[-1].strip():
            body.pop()
        if len(body) != N:
            raise ColoringFormatError(f"expected {N} colour lines, found {len(body)}", len(body) + 2)
        assignments = []
        for lineno, raw in enumerate(body, start=2):
            try:
                c = int(raw.strip())
            except ValueError:
                raise ColoringFormatError(f"not an integer: {raw!r}", lineno) from None
            if not 1 <= c <= n:
                raise ColoringFormatError(f"colour {c} outside 1..{n}", lineno)
            assignments.append(c)
        return cls(tuple(assignments), n)


def read_coloring(path) -> Coloring:
    return Coloring.from_text(Path(path).read_text())


def write_coloring(c: Coloring, path) -> None:
    Path(path).write_text(c.to_text())


def _class_witness(eq: LinearEquation, members) -> Optional[SolutionWitness]:
    if members and eq.balanced_form is not None:
        lo, hi = min(members), max(members)
        if hi - lo + 1 == len(members):
            return find_solution_in_interval(eq, lo, hi)
    return find_solution_in_set(eq, members)


def validate(
    c: Coloring, eq: LinearEquation, threads: int = 1
) -> Optional[tuple[int, SolutionWitness]]:
    """None when no class holds a solution, else (smallest bad colour, its lex-smallest witness)."""
    classes = c.classes()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            found = list(pool.map(lambda s: _class_witness(eq, s), classes))
    else:
        found = []
        for s in classes:
            w = _class_witness(eq, s)
            found.append(w)
            if w is not None:
                break
    for colour, w in enumerate(found, start=1):
        if w is not None:
            return colour, w
    return None


def validate_intervals(
    intervals: list[tuple[int, int]], eq: LinearEquation
) -> Optional[tuple[int, SolutionWitness]]:
    """:func:`validate` for a colouring given as one integer interval per colour."""
    for colour, (lo, hi) in enumerate(intervals, start=1):
        w = find_solution_in_interval(eq, lo, hi)
        if w is not None:
            return colour, w
    return None


def _ceil_power(l: int, r: int, i: int) -> int:
    # ceil((l/r)^i), exactly
    return -(-(l**i) // (r**i))


def greedy_intervals(eq: LinearEquation, n: int) -> list[tuple[int, int]]:
    """``[(lo_i, hi_i)]``: colour ``i`` covers the integers of ``[alpha^(i-1), alpha^i)``, ``alpha = l/r``.

    Inside such an interval any l values sum to at least ``l * min`` which
    exceeds ``r * max``, so no class contains a solution.  Intervals may be
    empty (``lo > hi``) when alpha is close to 1.
    """
    form = eq.balanced_form
    if form is None or not eq.is_canonical_balanced:
        raise ValueError(f"greedy colouring needs a balanced equation, got {eq.to_text()!r}")
    l, r = form
    if r < 1 or l <= r:
        raise ValueError(f"greedy colouring needs l > r >= 1, got ({l}, {r})")
    if n < 1:
        raise ValueError("need at least one colour")
    return [(_ceil_power(l, r, i - 1), _ceil_power(l, r, i) - 1) for i in range(1, n + 1)]


def greedy_coloring(eq: LinearEquation, n: int) -> Coloring:
    """The colouring of ``[1..ceil(alpha^n) - 1]`` given by :func:`greedy_intervals`."""
    assignments: list[int] = []
    for i, (lo, hi) in enumerate(greedy_intervals(eq, n), start=1):
        assignments.extend([i] * max(0, hi - lo + 1))
    return Coloring(tuple(assignments), n)


@dataclass(frozen=True)
class ColorClassStats:
    """Class sizes in descending order, with ``order[k - 1]`` the original colour of rank ``k``."""

    sizes: tuple[int, ...]
    order: tuple[int, ...]

    @property
    def N(self) -> int:
        return sum(self.sizes)

    def sigma(self, k: int) -> int:
        """Total size of the classes ranked after ``k``."""
        return sum(self.sizes[k:])

    @property
    def sigmas(self) -> tuple[int, ...]:
        return tuple(self.sigma(k) for k in range(1, len(self.sizes) + 1))


def class_stats(c: Coloring) -> ColorClassStats:
    sizes = [len(s) for s in c.classes()]
    # stable: equal sizes keep colour order
    order = sorted(range(1, c.n + 1), key=lambda i: -sizes[i - 1])
    return ColorClassStats(tuple(sizes[i - 1] for i in order), tuple(order))


def factorial_lemma_check(stats: ColorClassStats, k: int) -> bool:
    """``|A_k| >= |A_1| / (k-1)! - 2 (sigma_k + 1)`` for a sum-free partition."""
    if not 1 <= k <= len(stats.sizes):
        raise IndexError(f"k={k} outside 1..{len(stats.sizes)}")
    rhs = Fraction(stats.sizes[0], math.factorial(k - 1)) - 2 * (stats.sigma(k) + 1)
    return stats.sizes[k - 1] >= rhs


@dataclass(frozen=True)
class LargeColorChoice:
    k: int
    size_k: int
    threshold: float
    holds: bool


def select_large_colors(stats: ColorClassStats, n: int, N: int) -> LargeColorChoice:
    """Largest ``k`` with ``k! <= n^0.1``, and whether ``|A_k| >= N / n^1.3``.

    Both comparisons are done in integers (raised to the 10th power).
    """
    k = 1
    while math.factorial(k + 1) ** 10 <= n:
        k += 1
    k = max(1, min(k, n, len(stats.sizes)))
    size = stats.sizes[k - 1]
    holds = size**10 * n**13 >= N**10
    return LargeColorChoice(k=k, size_k=size, threshold=N / n**1.3, holds=holds)
