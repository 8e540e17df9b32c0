"""Smallest N at which each recolouring procedure finds a witness on the one-colour [1..N].

Compared with the smallest N at which a solution exists at all.

    python3 scripts/recoloring_thresholds.py --max-n 80
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from rado.colorings import Coloring
from rado.equations import find_solution_in_set
from rado.recoloring import run_recoloring


@dataclass
class Config:
    max_n: int = 80


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=Config.max_n)
    cfg = Config(max_n=p.parse_args().max_n)

    runs = [("sum3", None), ("coeff2", None)] + [("imbalanced", l) for l in range(3, 11)]
    print(f"{'method':<14} {'solution from':>13} {'witness from':>12} {'max moves/N':>12}")
    for method, l in runs:
        first_solution = first_witness = None
        worst = 0.0
        for N in range(1, cfg.max_n + 1):
            rep = run_recoloring(Coloring.monochrome(N), method, l)
            worst = max(worst, rep.steps / N)
            if first_solution is None and find_solution_in_set(rep.equation, range(1, N + 1)) is not None:
                first_solution = N
            if first_witness is None and rep.outcome == "witness":
                first_witness = N
        name = method if l is None else f"{method} l={l}"
        print(f"{name:<14} {first_solution!s:>13} {first_witness!s:>12} {worst:>12.2f}")


if __name__ == "__main__":
    main()
