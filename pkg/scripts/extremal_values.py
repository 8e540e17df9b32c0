"""Table of the largest N admitting an n-colouring of [1..N] with no monochromatic solution.

    python3 scripts/extremal_values.py --max-colors 3 --budget-nodes 2000000
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from rado.colorings import greedy_intervals
from rado.equations import LinearEquation
from rado.search import exact_extremal_N


@dataclass
class Config:
    equations: list[str] = field(default_factory=lambda: [
        "1 1 -1", "balanced 3 2", "balanced 4 3", "1 2 1 -1 -1", "1 1 1 -1", "balanced 12 9",
    ])
    max_colors: int = 3
    cap: int = 200
    budget_nodes: int = 2_000_000


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-colors", type=int, default=Config.max_colors)
    p.add_argument("--cap", type=int, default=Config.cap)
    p.add_argument("--budget-nodes", type=int, default=Config.budget_nodes)
    ns = p.parse_args()
    cfg = Config(max_colors=ns.max_colors, cap=ns.cap, budget_nodes=ns.budget_nodes)

    print(f"{'equation':<16} {'n':>2} {'N':>6} {'status':<10} {'greedy':>7} {'nodes':>9} {'secs':>7}")
    for text in cfg.equations:
        eq = LinearEquation.parse(text)
        form = eq.balanced_form
        for n in range(1, cfg.max_colors + 1):
            res = exact_extremal_N(eq, n, cfg.cap, cfg.budget_nodes)
            status = "exact" if res.certified else ("budget" if res.budget_exhausted else "at cap")
            shown = f"{res.largest_valid_N}" if res.certified else f">={res.largest_valid_N}"
            greedy = "-"
            if form is not None and form[1] >= 1 and form[0] > form[1]:
                greedy = str(max(0, max(hi for _, hi in greedy_intervals(eq, n))))
            print(f"{text:<16} {n:>2} {shown:>6} {status:<10} {greedy:>7} {res.nodes_explored:>9} "
                  f"{res.wall_time:>7.2f}")


if __name__ == "__main__":
    main()
