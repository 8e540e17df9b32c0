"""Exact backtracking search for small Schur-like numbers.

Colours are assigned to 1, 2, 3, ... in order.  When ``m`` gets colour
``c`` only solutions using ``m`` can be new, so the check is
:func:`has_solution_using` on the current class.  Symmetry breaking: 1 gets
colour 1 and a colour index is only used after all smaller ones.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from rado.colorings import Coloring
from rado.equations import LinearEquation, has_solution_using


class BudgetExhausted(RuntimeError):
    pass


@dataclass
class SearchResult:
    equation: LinearEquation
    n: int
    largest_valid_N: int
    coloring: Optional[Coloring]
    nodes_explored: int
    wall_time: float
    # N + 1 admits no colouring, certified by an exhausted search
    certified: bool
    at_cap: bool = False
    budget_exhausted: bool = False

    @property
    def schur_like_number(self) -> Optional[int]:
        """Least N with no valid colouring (largest valid N + 1), when certified."""
        return self.largest_valid_N + 1 if self.certified else None

    def to_dict(self) -> dict:
        return {
            "equation": self.equation.to_text(),
            "colors": self.n,
            "largest_valid_N": self.largest_valid_N,
            "least_forced_N": self.schur_like_number,
            "certified": self.certified,
            "at_cap": self.at_cap,
            "budget_exhausted": self.budget_exhausted,
            "nodes_explored": self.nodes_explored,
            "wall_time": self.wall_time,
            "coloring": list(self.coloring.assignments) if self.coloring else None,
        }


@dataclass
class _Search:
    eq: LinearEquation
    n: int
    target: int
    budget_nodes: Optional[int] = None
    nodes: int = 0
    best: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    assignment: list = field(default_factory=list)

    def __post_init__(self):
        self.classes = [[] for _ in range(self.n)]

    def run(self) -> None:
        self._extend(1, 0)

    def _extend(self, m: int, used: int) -> bool:
        """Depth-first; returns True once ``target`` elements are coloured."""
        self.nodes += 1
        if self.budget_nodes is not None and self.nodes > self.budget_nodes:
            raise BudgetExhausted(f"node budget {self.budget_nodes} exhausted")
        if len(self.assignment) > len(self.best):
            self.best = list(self.assignment)
        if m > self.target:
            return True
        for c in range(min(used + 1, self.n)):
            cls = self.classes[c]
            if has_solution_using(self.eq, cls, m):
                continue
            cls.append(m)
            self.assignment.append(c + 1)
            done = self._extend(m + 1, max(used, c + 1))
            self.assignment.pop()
            cls.pop()
            if done:
                return True
        return False


def is_partitionable(
    eq: LinearEquation, n: int, N: int, budget_nodes: Optional[int] = None
) -> Optional[Coloring]:
    """A valid n-colouring of [1..N], or None when none exists."""
    if n < 1 or N < 1:
        raise ValueError("need n >= 1 and N >= 1")
    s = _Search(eq, n, N, budget_nodes)
    s.run()
    if len(s.best) == N:
        return Coloring(tuple(s.best), n)
    return None


def exact_extremal_N(
    eq: LinearEquation, n: int, cap: int, budget_nodes: Optional[int] = None
) -> SearchResult:
    """Largest N <= cap admitting a valid n-colouring of [1..N].

    One depth-first pass: a valid colouring of [1..N] restricts to one of
    [1..N-1], so the answer is the deepest node reached.  Reaching ``cap``
    stops the search and flags the result.
    """
    start = time.perf_counter()
    s = _Search(eq, n, cap, budget_nodes)
    exhausted = False
    try:
        s.run()
    except BudgetExhausted:
        exhausted = True
    N = len(s.best)
    return SearchResult(
        equation=eq,
        n=n,
        largest_valid_N=N,
        coloring=Coloring(tuple(s.best), n),
        nodes_explored=s.nodes,
        wall_time=time.perf_counter() - start,
        certified=not exhausted and N < cap,
        at_cap=N >= cap,
        budget_exhausted=exhausted,
    )
