"""Command-line interface.

Exit codes: 0 success, 1 check failure, 2 usage or parameter error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .combinat import (LABELS, ParameterError, Params, FORMULAS, format_set, max_f,
                       theorem_threshold)
from .constructions import ConstructionError, build_default
from .document import DocumentError, read_family, write_family
from .family import FamilyError, is_t_intersecting, iterated_tau, min_covers
from .search import EXHAUSTED, Budget, CheckpointError, exact_max, sweep
from .verify import (ACCEPTANCE_GRID, CHECK_NAMES, DEFAULT_GRID, EXHAUSTIVE_GRID, FAIL,
                     family_checks, run_suite, summarize)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

GRIDS = {"default": DEFAULT_GRID, "acceptance": ACCEPTANCE_GRID, "small": EXHAUSTIVE_GRID}


def _emit(args, data: dict) -> None:
    if args.json:
        print(json.dumps(data))
        return
    parts = []
    for key, value in data.items():
        if isinstance(value, bool):
            value = str(value).lower()
        parts.append(f"{key}={value}")
    print(" ".join(parts))


def _params(args) -> Params:
    return Params(args.n, args.k, args.t)


def cmd_formulas(args) -> int:
    p = _params(args)
    values = {lab: FORMULAS[lab](p) for lab in LABELS}
    best, labels = max_f(p)
    threshold = theorem_threshold(p.k, p.t)
    _emit(args, {
        "f1": values["C1"], "f2": values["C2"], "f3": values["C3"],
        "max": ",".join(lab.replace("C", "f") for lab in sorted(labels)),
        "max_value": best, "threshold": threshold, "in_range": p.n >= threshold,
    })
    return EXIT_OK


def cmd_crossover(args) -> int:
    rows = []
    for n in range(args.n_from, args.n_to + 1):
        best, labels = max_f(Params(n, args.k, args.t))
        rows.append({"n": n, "max": ",".join(sorted(labels)), "max_value": best})
    for row in rows:
        _emit(args, row)
    return EXIT_OK


def cmd_construct(args) -> int:
    p = _params(args)
    f = build_default(p, args.variant.upper())
    if args.out:
        write_family(f, args.out)
    it = iterated_tau(f)
    _emit(args, {"variant": args.variant, "size": len(f), "tau": f"({it.tau},{it.cover_tau})"})
    return EXIT_OK


def cmd_tau(args) -> int:
    f = read_family(args.file)
    cov = min_covers(f)
    it = iterated_tau(f)
    _emit(args, {"tau": cov.size, "covers": len(cov), "cover_tau": it.cover_tau,
                 "covers_t_intersecting": it.covers_t_intersecting})
    return EXIT_OK


def cmd_covers(args) -> int:
    f = read_family(args.file)
    cov = min_covers(f)
    listing = "{" + ",".join(format_set(c) for c in cov.covers) + "}"
    _emit(args, {"tau": cov.size, "count": len(cov), "covers": listing})
    return EXIT_OK


def cmd_search(args) -> int:
    p = _params(args)
    resume = Path(args.resume).read_text() if args.resume else None
    res = exact_max(p, args.s, Budget(args.max_nodes, args.max_seconds), resume=resume)
    if args.out:
        write_family(res.witness, args.out)
    if res.checkpoint and args.checkpoint:
        Path(args.checkpoint).write_text(res.checkpoint)
    _emit(args, {"value": res.value, "status": res.status, "nodes": res.nodes,
                 "constraints": res.constraints, "seconds": round(res.seconds, 3)})
    return EXIT_BUDGET if res.status == EXHAUSTED else EXIT_OK


def _parse_range(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    return list(range(int(lo), int(hi or lo) + 1))


def cmd_sweep(args) -> int:
    grid = [(n, k, t) for t in _parse_range(args.t) for k in _parse_range(args.k)
            for n in _parse_range(args.n)]
    code = EXIT_OK
    for row in sweep(grid, args.s, Budget(args.max_nodes, args.max_seconds)):
        _emit(args, row)
        if row["status"] == EXHAUSTED:
            code = EXIT_BUDGET
    return code


def cmd_verify(args) -> int:
    if args.list_checks:
        for name in CHECK_NAMES:
            print(name)
        return EXIT_OK
    if args.family:
        f = read_family(args.family)
        reports = family_checks(f, args.family)
    else:
        reports = run_suite(GRIDS[args.grid], seeds=args.seeds, fault=args.inject_fault)
    if args.report:
        Path(args.report).write_text("".join(r.to_line() + "\n" for r in reports))
    for name, counts in summarize(reports).items():
        _emit(args, {"check": name, **{k.replace("-", "_"): v for k, v in counts.items()}})
    failed = [r for r in reports if r.blocking]
    for r in failed:
        print(f"FAIL {r.name} {r.instance} {json.dumps(r.metrics)}", file=sys.stderr)
    flagged = sum(1 for r in reports if r.verdict == FAIL and not r.blocking)
    _emit(args, {"checks": len(reports), "failures": len(failed), "flagged": flagged})
    return EXIT_CHECK if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tintersect",
                                     description="t-intersecting families with large t-covering number")
    parser.add_argument("--json", action="store_true", help="emit one JSON object per record")
    sub = parser.add_subparsers(dest="command", required=True)

    def nkt(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--t", type=int, required=True)

    def budget(sp):
        sp.add_argument("--max-nodes", type=int)
        sp.add_argument("--max-seconds", type=float)

    sp = sub.add_parser("formulas", help="evaluate f1, f2, f3 and the theorem threshold")
    nkt(sp)
    sp.set_defaults(func=cmd_formulas)

    sp = sub.add_parser("crossover", help="argmax of f1, f2, f3 over a range of n")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n-from", type=int, required=True)
    sp.add_argument("--n-to", type=int, required=True)
    sp.set_defaults(func=cmd_crossover)

    sp = sub.add_parser("construct", help="build a construction with its default placement")
    sp.add_argument("--variant", choices=["c1", "c2", "c3"], required=True)
    nkt(sp)
    sp.add_argument("--out", help="write the family document here")
    sp.set_defaults(func=cmd_construct)

    for name, func, text in (("tau", cmd_tau, "covering numbers of a family document"),
                             ("covers", cmd_covers, "list the minimum t-covers of a family document")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("file")
        sp.set_defaults(func=func)

    sp = sub.add_parser("search", help="exact f(n,k,t,s) with an optimal witness")
    nkt(sp)
    sp.add_argument("--s", type=int, required=True)
    budget(sp)
    sp.add_argument("--out", help="write the witness document here")
    sp.add_argument("--checkpoint", help="where to save the frontier if the budget runs out")
    sp.add_argument("--resume", help="continue from a saved checkpoint")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("sweep", help="exact search over a grid, e.g. --n 9-12 --k 3 --t 1 --s 3")
    sp.add_argument("--n", required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--s", type=int, required=True)
    budget(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the structural checks")
    sp.add_argument("--grid", choices=sorted(GRIDS), default="default")
    sp.add_argument("--seeds", type=int, default=200)
    sp.add_argument("--family", help="check a single family document instead of the grid")
    sp.add_argument("--report", help="write JSON-lines check records here")
    sp.add_argument("--inject-fault", action="store_true",
                    help="drop one member from every built construction")
    sp.add_argument("--list-checks", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, ConstructionError, DocumentError, FamilyError, CheckpointError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
