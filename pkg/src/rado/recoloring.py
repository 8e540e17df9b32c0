"""Auxiliary-colour recolouring procedures.

Every original colour ``i`` gets extra bookkeeping cells ``(i, 2), (i, 3), ...``
next to ``(i, 1) = A_i``.  Elements climb levels when they complete a Schur
triple inside their cell, remembering the pair that put them there; once a
triple appears where no climb is possible, the recorded pairs are unwound
into a monochromatic solution of the target equation in the original
colouring.  If no cell holds a Schur triple the run stalls, which is an
ordinary outcome at small N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from rado.colorings import Coloring
from rado.equations import LinearEquation, SolutionWitness, check_solution

SUM3 = LinearEquation((1, 1, 1, -1))
COEFF2 = LinearEquation((1, 2, 1, -1, -1))


@dataclass(frozen=True)
class Move:
    element: int
    color: int
    from_level: int
    to_level: int
    pair: tuple[int, int]


@dataclass
class RecoloringState:
    levels: int
    cells: dict[tuple[int, int], set[int]]
    origin: dict[int, int]
    provenance: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    moves: list[Move] = field(default_factory=list)
    position: dict[int, tuple[int, int]] = field(default_factory=dict)

    @classmethod
    def from_coloring(cls, c: Coloring, levels: int) -> RecoloringState:
        cells = {(i, j): set() for i in range(1, c.n + 1) for j in range(1, levels + 1)}
        origin = {}
        position = {}
        for x, colour in enumerate(c.assignments, start=1):
            cells[(colour, 1)].add(x)
            origin[x] = colour
            position[x] = (colour, 1)
        return cls(levels, cells, origin, position=position)

    def level_of(self, x: int) -> int:
        return self.position[x][1]

    def move(self, x: int, to_level: int, pair: tuple[int, int]) -> None:
        i, j = self.position[x]
        self.cells[(i, j)].remove(x)
        self.cells[(i, to_level)].add(x)
        self.position[x] = (i, to_level)
        self.provenance[(x, to_level)] = pair
        self.moves.append(Move(x, i, j, to_level, pair))

    def smallest_triple(self) -> Optional[tuple[tuple[int, int], tuple[int, int, int]]]:
        """The Schur triple ``a + b = c`` (a <= b) inside one cell, minimal by ``(c, a, b)``."""
        best = None
        for key in sorted(self.cells):
            members = self.cells[key]
            if not members:
                continue
            ordered = sorted(members)
            for c in ordered:
                if best is not None and c >= best[1][0]:
                    break
                hit = next((a for a in ordered if 2 * a <= c and c - a in members), None)
                if hit is not None:
                    best = (key, (c, hit, c - hit))
                    break
        return best

    def summary(self) -> dict:
        return {
            "cells": {f"{i},{j}": sorted(s) for (i, j), s in sorted(self.cells.items())},
            "moves": [
                {"element": m.element, "colour": m.color, "from": m.from_level,
                 "to": m.to_level, "pair": list(m.pair)}
                for m in self.moves
            ],
            "provenance": {f"{x}@{lvl}": list(p) for (x, lvl), p in sorted(self.provenance.items())},
        }


@dataclass
class WitnessReport:
    method: str
    equation: LinearEquation
    outcome: str  # "witness" or "stalled"
    witness: Optional[SolutionWitness]
    color: Optional[int]
    steps: int
    state: RecoloringState

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "equation": self.equation.to_text(),
            "outcome": self.outcome,
            "witness": self.witness.to_list() if self.witness else None,
            "colour": self.color,
            "steps": self.steps,
            "state": self.state.summary(),
        }


def decompose_exact_k(state: RecoloringState, x: int, k: int, level: Optional[int] = None) -> tuple[int, ...]:
    """Write ``x`` (sitting at ``level``) as a sum of exactly ``k`` same-colour numbers.

    Needs ``1 <= k <= 2^(level-1)``; the pair that lifted ``x`` to ``level``
    gets ``floor(k/2)`` and ``ceil(k/2)`` summands, recursively.
    """
    if level is None:
        level = state.level_of(x)
    if not 1 <= k <= 2 ** (level - 1):
        raise ValueError(f"k={k} outside 1..{2 ** (level - 1)} for level {level}")
    if k == 1:
        return (x,)
    a, b = state.provenance[(x, level)]
    return decompose_exact_k(state, a, k // 2, level - 1) + decompose_exact_k(state, b, k - k // 2, level - 1)


def _report(method, eq, state, values, colour):
    if values is None:
        return WitnessReport(method, eq, "stalled", None, None, len(state.moves), state)
    w = SolutionWitness(values)
    assert check_solution(eq, w)
    return WitnessReport(method, eq, "witness", w, colour, len(state.moves), state)


def find_solution_sum3_eq_y(c: Coloring) -> WitnessReport:
    """Monochromatic ``x_1 + x_2 + x_3 = y`` via one auxiliary cell per colour.

    A triple ``a + b = c`` in ``A_i`` sends ``c`` to ``A_i'``; a triple
    ``a' + b' = c'`` in ``A_i'`` unwinds ``a' = x_1 + x_2`` into
    ``x_1 + x_2 + b' = c'``.
    """
    state = RecoloringState.from_coloring(c, 2)
    while True:
        found = state.smallest_triple()
        if found is None:
            return _report("sum3", SUM3, state, None, None)
        (i, j), (cc, a, b) = found
        if j == 1:
            state.move(cc, 2, (a, b))
            continue
        x1, x2 = state.provenance[(a, 2)]
        return _report("sum3", SUM3, state, (x1, x2, b, cc), i)


def find_solution_imbalanced(c: Coloring, l: int) -> WitnessReport:
    """Monochromatic ``x_1 + ... + x_l = y`` with ``ceil(log2 l)`` levels per colour."""
    if l < 3:
        raise ValueError(f"need l >= 3, got {l}")
    r = math.ceil(math.log2(l))
    eq = LinearEquation((1,) * l + (-1,))
    state = RecoloringState.from_coloring(c, r)
    while True:
        found = state.smallest_triple()
        if found is None:
            return _report("imbalanced", eq, state, None, None)
        (i, j), (cc, a, b) = found
        if j < r:
            state.move(cc, j + 1, (a, b))
            continue
        xs = decompose_exact_k(state, a, l // 2, r) + decompose_exact_k(state, b, l - l // 2, r)
        return _report("imbalanced", eq, state, xs + (cc,), i)


def find_solution_coefficient2(c: Coloring) -> WitnessReport:
    """Monochromatic ``x_1 + 2 x_2 + x_3 = y_1 + y_2``.

    A triple ``a + b = c`` in ``A_i`` sends the smaller summand ``a`` to
    ``A_i'`` remembering ``(b, c)``, so ``b + a = c``.  A triple
    ``a' + b' = c'`` in ``A_i'`` with ``x_1 + a' = y_1`` recorded for ``a'``
    gives ``x_1 + 2a' + b' = y_1 + c'``.
    """
    state = RecoloringState.from_coloring(c, 2)
    while True:
        found = state.smallest_triple()
        if found is None:
            return _report("coeff2", COEFF2, state, None, None)
        (i, j), (cc, a, b) = found
        if j == 1:
            state.move(a, 2, (b, cc))
            continue
        x1, y1 = state.provenance[(a, 2)]
        return _report("coeff2", COEFF2, state, (x1, a, b, y1, cc), i)


def run_recoloring(c: Coloring, method: str, l: Optional[int] = None) -> WitnessReport:
    if method == "sum3":
        return find_solution_sum3_eq_y(c)
    if method == "imbalanced":
        if l is None:
            raise ValueError("method 'imbalanced' needs l")
        return find_solution_imbalanced(c, l)
    if method == "coeff2":
        return find_solution_coefficient2(c)
    raise ValueError(f"unknown recolouring method {method!r}")
