"""Sweep connection sets A in [1..M]: 3- and 5-cycles on [1..2M] versus (12,9) solutions over A.

    python3 scripts/cycle_witness_sweep.py --max-elem 10
"""

from __future__ import annotations

import argparse
import itertools
from collections import Counter
from dataclasses import dataclass

from rado.diffgraph import TARGET_EQUATION, build, cycle_relation, cycle_to_solution, find_short_odd_cycle
from rado.equations import check_solution, find_solution_in_set


@dataclass
class Config:
    max_elem: int = 10


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-elem", type=int, default=Config.max_elem)
    cfg = Config(max_elem=p.parse_args().max_elem)
    M = cfg.max_elem

    shapes: Counter = Counter()
    free, checked, failures = 0, 0, []
    for r in range(M + 1):
        for A in itertools.combinations(range(1, M + 1), r):
            G = build(range(1, 2 * M + 1), A)
            cyc = find_short_odd_cycle(G)
            if cyc is not None:
                left, right = cycle_relation(cyc, A)
                shapes[(len(cyc), len(left), len(right))] += 1
                w = cycle_to_solution(cyc, A)
                checked += 1
                if not (check_solution(TARGET_EQUATION, w) and set(w.values) <= set(A)):
                    failures.append(A)
            if find_solution_in_set(TARGET_EQUATION, A) is None:
                free += 1
                if cyc is not None:
                    failures.append(A)

    print(f"subsets of [1..{M}]: {2 ** M}")
    print(f"with a 3- or 5-cycle on [1..{2 * M}]: {checked}")
    for (length, l, r), count in sorted(shapes.items()):
        print(f"  C{length} giving a ({l},{r}) relation: {count}")
    print(f"(12,9)-solution-free sets: {free}")
    print(f"failures: {failures if failures else 'none'}")


if __name__ == "__main__":
    main()
