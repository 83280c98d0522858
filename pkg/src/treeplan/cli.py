"""Command-line surface: plan, build, rework, analyze, verify, hash.

Output is byte-stable for fixed inputs and flags.  Exit codes: 0 ok,
1 I/O failure, 2 usage or domain error, 3 verification violations found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from treeplan import figures, oracle
from treeplan.engine import default_primitive, hash_tree, schedule, split_blocks
from treeplan.planner import DegenerateInputError, plan_arities, plan_message
from treeplan.rework import rework
from treeplan.topology import (
    build_same_depth,
    compact_to_json_dict,
    rightmost_profile,
    running_time,
    to_compact,
    work,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VIOLATIONS = 3


def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _plan_or_exit(l: int):
    try:
        return plan_arities(l)
    except DegenerateInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _summary(l: int) -> dict:
    """Side-by-side same-depth vs reworked numbers for one block count."""
    plan = _plan_or_exit(l)
    same = build_same_depth(plan)
    reworked = rework(plan)
    sched_same = schedule(same)
    sched_re = schedule(reworked.tree)
    return {
        "l": l,
        "case": plan.case.case_id,
        "arities": list(plan.arities),
        "running_time": running_time(same),
        "work_same_depth": work(same),
        "work_reworked": work(reworked.tree),
        "procs_same_depth": sched_same.max_processors,
        "procs_reworked": sched_re.max_processors,
        "rightmost_same_depth": list(rightmost_profile(same)),
        "rightmost_reworked": list(rightmost_profile(reworked.tree)),
        "trace": [list(p) for p in reworked.trace],
        "active_same_depth": list(sched_same.active),
        "active_reworked": list(sched_re.active),
    }


def cmd_plan(args) -> int:
    plan = _plan_or_exit(args.l)
    same = build_same_depth(plan)
    sel = plan.case
    out = {
        "l": plan.l,
        "case": sel.case_id,
        "h5": sel.h5,
        "h4": sel.h4,
        "h3": sel.h3,
        "h2": sel.h2,
        "arities": list(plan.arities),
        "running_time": plan.running_time,
        "work": work(same),
        "max_processors": schedule(same).max_processors,
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"l: {out['l']}")
        print(f"case: {out['case']}")
        print(f"counts (h5,h4,h3,h2): ({sel.h5},{sel.h4},{sel.h3},{sel.h2})")
        print(f"arities (base->root): {' '.join(map(str, out['arities']))}")
        print(f"running time: {out['running_time']}")
        print(f"work: {out['work']}")
        print(f"max processors: {out['max_processors']}")
    return EXIT_OK


def cmd_build(args) -> int:
    plan = _plan_or_exit(args.l)
    t = build_same_depth(plan)
    print(_dump(compact_to_json_dict(to_compact(t, plan, form="same_depth"))))
    return EXIT_OK


def cmd_rework(args) -> int:
    plan = _plan_or_exit(args.l)
    reworked = rework(plan)
    doc = compact_to_json_dict(to_compact(reworked.tree, plan, form="reworked"))
    doc["trace"] = [list(p) for p in reworked.trace]
    print(_dump(doc))
    return EXIT_OK


def cmd_analyze(args) -> int:
    s = _summary(args.l)
    figure_paths: list[str] = []
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        figure_paths.append(
            figures.save_processor_profile(
                {
                    "same-depth": s["active_same_depth"],
                    "reworked": s["active_reworked"],
                },
                s["l"],
                args.figures,
            )
        )
    out = {k: v for k, v in s.items() if not k.startswith("active_")}
    if figure_paths:
        out["figures"] = figure_paths
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"l: {s['l']} (case {s['case']}, arities {' '.join(map(str, s['arities']))})")
        print(f"running time: {s['running_time']} (preserved by rework)")
        print(f"work: {s['work_same_depth']} -> {s['work_reworked']}")
        print(f"max processors: {s['procs_same_depth']} -> {s['procs_reworked']}")
        print(
            "rightmost profile: "
            f"{tuple(s['rightmost_same_depth'])} -> {tuple(s['rightmost_reworked'])}"
        )
        if s["trace"]:
            print(f"rework trace: {' | '.join(str(tuple(p)) for p in s['trace'])}")
        else:
            print("no rework applicable")
        for path in figure_paths:
            print(f"figure: {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.l_min < 2 or args.l_max < args.l_min:
        print("error: need 2 <= --from <= --to", file=sys.stderr)
        return EXIT_USAGE
    records = oracle.sweep_verify(args.l_min, args.l_max)
    for rec in records:
        print(_dump(rec))
    if args.figures:
        os.makedirs(args.figures, exist_ok=True)
        rows = [_summary(l) for l in range(args.l_min, args.l_max + 1)]
        for path in figures.save_sweep_figures(rows, args.figures):
            print(f"figure: {path}", file=sys.stderr)
    violations = sum(1 for r in records if r["status"] == "violation")
    print(
        f"checked l={args.l_min}..{args.l_max}: "
        f"{len(records)} records, {violations} violations",
        file=sys.stderr,
    )
    return EXIT_VIOLATIONS if violations else EXIT_OK


def cmd_hash(args) -> int:
    try:
        with open(args.path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    blocks = split_blocks(data)
    l = len(blocks)
    plan = plan_message(l)
    if args.same_depth or l == 1:
        tree = build_same_depth(plan)
    else:
        tree = rework(plan).tree
    digest, profile = hash_tree(blocks, tree, default_primitive())
    out = {
        "digest": digest.hex(),
        "l": l,
        "running_time": profile.makespan,
        "work": profile.total_units,
        "max_processors": profile.max_processors,
        "form": "same_depth" if (args.same_depth or l == 1) else "reworked",
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(out["digest"])
        print(
            f"l={out['l']} time={out['running_time']} work={out['work']} "
            f"max_processors={out['max_processors']} form={out['form']}"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeplan",
        description="Optimal hash-tree topology planner, verifier and hasher.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("plan", help="optimal arity multiset for l blocks")
    p.add_argument("l", type=int)
    add_format(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("build", help="same-depth topology JSON for l blocks")
    p.add_argument("l", type=int)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("rework", help="reworked topology JSON for l blocks")
    p.add_argument("l", type=int)
    p.set_defaults(func=cmd_rework)

    p = sub.add_parser("analyze", help="same-depth vs reworked comparison")
    p.add_argument("l", type=int)
    p.add_argument("--figures", metavar="DIR", help="render figures into DIR")
    add_format(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="brute-force verification sweep")
    p.add_argument("--from", dest="l_min", type=int, default=2)
    p.add_argument("--to", dest="l_max", type=int, default=1000)
    p.add_argument("--figures", metavar="DIR", help="render sweep figures into DIR")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hash", help="plan, rework and hash a file")
    p.add_argument("path")
    p.add_argument("--same-depth", action="store_true", help="skip the rework pass")
    add_format(p)
    p.set_defaults(func=cmd_hash)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
