"""Command-line entry point: ``rado <subcommand> ...``.

Exit status: 0 on success, 1 on invalid input, 2 when a search budget runs out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from rado import SCHEMA_VERSION, __version__
from rado.colorings import (
    ColoringFormatError,
    greedy_coloring,
    read_coloring,
    validate,
    write_coloring,
)
from rado.diffgraph import (
    DEFAULT_MIS_CAP,
    MISCapExceeded,
    ShortOddCycleError,
    build,
    candidate_independent_sets,
    cycle_to_solution,
    find_short_odd_cycle,
    max_independent_set_exact,
    shearer_girth_bound,
    shearer_terms,
    shearer_triangle_free_bound,
    shortest_odd_cycle,
)
from rado.equations import LinearEquation
from rado.extraction import ChainConfig, schur_extract, thm3_extract, thm4_pipeline
from rado.recoloring import run_recoloring
from rado.search import exact_extremal_N

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    equation: Optional[str] = None
    inputs: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    seed: int = 0
    mis_cap: int = DEFAULT_MIS_CAP
    budget_nodes: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "json"
    threads: int = 1


def read_int_set(path) -> list[int]:
    """One integer per line; blank lines are skipped."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            v = int(raw.strip())
        except ValueError:
            raise InputError(f"{path}:{lineno}: not an integer: {raw!r}") from None
        if v <= 0:
            raise InputError(f"{path}:{lineno}: expected a positive integer, got {v}")
        values.append(v)
    return values


def _load_coloring(path):
    try:
        return read_coloring(path)
    except ColoringFormatError as exc:
        raise InputError(f"{path}:{exc.line}: {exc.message}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _parse_eq(text):
    try:
        return LinearEquation.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(cfg: RunConfig, report) -> None:
    if isinstance(report, str):
        text = report
    else:
        report = {"schema_version": SCHEMA_VERSION, "command": cfg.subcommand} | report
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(cfg):
    eq = _parse_eq(cfg.equation)
    c = _load_coloring(cfg.inputs["coloring"])
    bad = validate(c, eq, threads=cfg.threads)
    if bad is None:
        return {"result": "ok", "N": c.N, "colors": c.n}
    colour, w = bad
    return {"result": "violation", "N": c.N, "colors": c.n, "colour": colour, "witness": w.to_list()}


def _cmd_greedy(cfg):
    eq = _parse_eq(cfg.equation)
    try:
        c = greedy_coloring(eq, cfg.options["colors"])
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if cfg.out:
        write_coloring(c, cfg.out)
        return None
    return c.to_text()


def _cmd_graph(cfg):
    A = read_int_set(cfg.inputs["set"])
    M = cfg.options["range"]
    G = build(range(1, M + 1), A)
    analysis = cfg.options.get("analysis")
    report = {"range": M, "connection": sorted(set(A)), "vertices": len(G), "edges": len(G.edges)}
    if analysis is None:
        return report
    report["analysis"] = analysis
    if analysis == "girth":
        short = find_short_odd_cycle(G)
        odd = shortest_odd_cycle(G)
        report["odd_girth"] = None if odd is None else len(odd)
        report["shortest_odd_cycle"] = None if odd is None else list(odd)
        report["short_odd_cycle"] = None if short is None else list(short)
        report["witness_12_9"] = None if short is None else cycle_to_solution(short, A).to_list()
    elif analysis in ("shearer1", "shearer2"):
        m = 2 if analysis == "shearer1" else cfg.options.get("m") or 2
        try:
            bound = shearer_triangle_free_bound(G) if analysis == "shearer1" else shearer_girth_bound(G, m)
        except ShortOddCycleError as exc:
            raise InputError(f"{exc}") from None
        if cfg.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["vertex"] + [f"d{i}" for i in range(1, m + 1)] + ["term"])
            for v, prof, term in shearer_terms(G, m):
                w.writerow([v, *prof, repr(term)])
            return buf.getvalue()
        report["m"] = m
        report["bound"] = bound
        try:
            alpha = len(max_independent_set_exact(G, cfg.mis_cap))
            report["alpha"] = alpha
            report["bound_le_alpha"] = bound <= alpha + 1e-9
        except MISCapExceeded:
            report["alpha"] = None
    elif analysis == "mis":
        try:
            S = max_independent_set_exact(G, cfg.mis_cap)
        except MISCapExceeded as exc:
            raise InputError(str(exc)) from None
        report["alpha"] = len(S)
        report["independent_set"] = sorted(S)
    elif analysis == "candidates":
        a, depth = cfg.options.get("anchor"), cfg.options.get("depth") or 1
        if a is None or a not in G:
            raise InputError("--anchor must name a vertex in [1..range]")
        try:
            fams = candidate_independent_sets(G, A, a, depth)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report["anchor"], report["depth"] = a, depth
        report["families"] = {name: sorted(s) for name, s in fams.families}
        report["best"] = sorted(fams.best)
    if cfg.fmt == "csv":
        raise InputError("csv output is only available for --analysis shearer1/shearer2")
    return report


def _cmd_extract(cfg):
    c = _load_coloring(cfg.inputs["coloring"])
    method = cfg.options["method"]
    chain = ChainConfig(mis_cap=cfg.mis_cap)
    if method == "schur":
        return {"trace": schur_extract(c).to_dict()}
    if method == "thm3":
        return {"trace": thm3_extract(c, chain).to_dict()}
    return {"seed": cfg.seed} | thm4_pipeline(c, seed=cfg.seed, cfg=chain).to_dict()


def _cmd_recolor(cfg):
    c = _load_coloring(cfg.inputs["coloring"])
    try:
        rep = run_recoloring(c, cfg.options["method"], cfg.options.get("l"))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return rep.to_dict()


def _cmd_search(cfg):
    eq = _parse_eq(cfg.equation)
    res = exact_extremal_N(eq, cfg.options["colors"], cfg.options["max_n"], cfg.budget_nodes)
    return res.to_dict()


COMMANDS = {
    "validate": _cmd_validate,
    "greedy": _cmd_greedy,
    "graph": _cmd_graph,
    "extract": _cmd_extract,
    "recolor": _cmd_recolor,
    "search": _cmd_search,
}


def run(cfg: RunConfig) -> int:
    try:
        if cfg.fmt == "csv" and cfg.subcommand != "graph":
            raise InputError("csv output is only available for the graph subcommand")
        report = COMMANDS[cfg.subcommand](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if report is not None:
        _emit(cfg, report)
    if cfg.subcommand == "search" and report["budget_exhausted"]:
        return EXIT_BUDGET
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input (exit 1); 2 is reserved for budgets
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rado", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version",
                   version=f"rado {__version__} (report schema {SCHEMA_VERSION})")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, out_required=False):
        sp.add_argument("--out", required=out_required, help="output path (default: stdout)")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        sp.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $RADO_THREADS or 1)")

    sp = sub.add_parser("validate", help="check a colouring for monochromatic solutions")
    sp.add_argument("--eq", required=True)
    sp.add_argument("--coloring", required=True)
    common(sp)

    sp = sub.add_parser("greedy", help="interval colouring for a balanced l > r equation")
    sp.add_argument("--eq", required=True)
    sp.add_argument("--colors", type=int, required=True)
    common(sp)

    sp = sub.add_parser("graph", help="difference graph analyses on [1..range]")
    sp.add_argument("--set", required=True, help="connection set file, one integer per line")
    sp.add_argument("--range", type=int, required=True)
    sp.add_argument("--analysis", choices=("girth", "shearer1", "shearer2", "mis", "candidates"))
    sp.add_argument("--m", type=int)
    sp.add_argument("--anchor", type=int)
    sp.add_argument("--depth", type=int, choices=(1, 2, 3))
    sp.add_argument("--mis-cap", type=int, default=DEFAULT_MIS_CAP)
    common(sp)

    sp = sub.add_parser("extract", help="run an extraction pipeline on a colouring")
    sp.add_argument("--method", choices=("schur", "thm3", "thm4"), required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mis-cap", type=int, default=DEFAULT_MIS_CAP)
    common(sp)

    sp = sub.add_parser("recolor", help="auxiliary-colour witness search")
    sp.add_argument("--method", choices=("sum3", "imbalanced", "coeff2"), required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--coloring", required=True)
    common(sp)

    sp = sub.add_parser("search", help="exact largest N with a valid colouring")
    sp.add_argument("--eq", required=True)
    sp.add_argument("--colors", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--budget-nodes", type=int)
    common(sp)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    threads = ns.threads if ns.threads is not None else int(os.environ.get("RADO_THREADS", "1") or 1)
    cfg = RunConfig(
        subcommand=ns.subcommand,
        equation=getattr(ns, "eq", None),
        seed=getattr(ns, "seed", 0),
        mis_cap=getattr(ns, "mis_cap", DEFAULT_MIS_CAP),
        budget_nodes=getattr(ns, "budget_nodes", None),
        out=ns.out,
        fmt=ns.fmt,
        threads=max(1, threads),
    )
    for key in ("coloring", "set"):
        if getattr(ns, key, None) is not None:
            cfg.inputs[key] = getattr(ns, key)
    for key in ("colors", "range", "analysis", "m", "anchor", "depth", "method", "l", "max_n"):
        if getattr(ns, key, None) is not None:
            cfg.options[key] = getattr(ns, key)
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
