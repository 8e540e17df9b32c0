"""Print the extraction chains on greedy colourings, step by step.

    python3 scripts/chain_demo.py --colors 4
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from rado.colorings import greedy_coloring
from rado.equations import LinearEquation
from rado.extraction import ChainConfig, schur_extract, thm3_extract, thm4_pipeline


@dataclass
class Config:
    colors: int = 4
    seed: int = 0
    mis_cap: int = 200


def show(trace) -> None:
    print(f"  method={trace.method} |X0|={len(trace.X0)} terminal={trace.terminal}")
    for s in trace.steps:
        print(f"    step {s.index}: colour {s.color} {s.size_in} -> {s.size_out} "
              f"(bound {s.bound:.3f}, holds={s.bound_holds}, source={s.source or '-'}, "
              f"anchor_check={s.anchor_check})")
    if trace.witness is not None:
        print(f"    witness in colour {trace.witness_color}: {trace.witness.values}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--colors", type=int, default=Config.colors)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--mis-cap", type=int, default=Config.mis_cap)
    ns = p.parse_args()
    cfg = Config(colors=ns.colors, seed=ns.seed, mis_cap=ns.mis_cap)
    chain = ChainConfig(mis_cap=cfg.mis_cap)

    for n in range(1, cfg.colors + 1):
        print(f"x + y = z, greedy colouring with {n} colours")
        show(schur_extract(greedy_coloring(LinearEquation((1, 1, -1)), n)))
        print(f"(3,2) equation, greedy colouring with {n} colours")
        show(thm3_extract(greedy_coloring(LinearEquation.balanced(3, 2), n), chain))
        print(f"(12,9) equation, greedy (4,3) colouring with {n} colours")
        rep = thm4_pipeline(greedy_coloring(LinearEquation.balanced(4, 3), n), seed=cfg.seed, cfg=chain)
        for phase in rep.phases:
            keys = {k: v for k, v in phase.items() if k not in ("phase", "X", "intersection")}
            print(f"    phase {phase['phase']}: {keys}")
        show(rep.trace)


if __name__ == "__main__":
    main()
