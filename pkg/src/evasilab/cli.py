"""Command-line interface: tables, solves, sweeps, and the game server."""

from __future__ import annotations

import argparse
import json
import sys

from .exports import strategy_to_dot, strategy_to_json_dict
from .graphs import enumerate_classes
from .positions import build_position_table
from .properties import class_order, is_complement_closed, is_monotone
from .scanner import (
    MODE_COMPLEMENT_CLOSED,
    MODE_FULL,
    MODE_SAMPLE,
    ScanOptions,
    ScanReport,
    scan_complement_closed,
    scan_full,
    scan_sample,
)
from .service import resolve_property
from .solver import extract_strategy, solve


def _load_property(n: int, spec: str):
    if spec.startswith("builtin:"):
        return resolve_property(n, spec)
    with open(spec) as fh:
        return resolve_property(n, json.load(fh))


def _cmd_graphs(args) -> int:
    table = enumerate_classes(args.n)
    if args.json:
        print(json.dumps(table.to_json_dict(), indent=2))
        return 0
    print(f"{table.num_classes} isomorphism classes of {args.n}-vertex graphs")
    print(f"{'id':>3} {'code':<{table.m}} {'edges':>5} {'aut':>4} {'orbit':>5} {'comp':>4}")
    for i in range(table.num_classes):
        print(
            f"{i:>3} {table.codes[i]:<{table.m}} {table.masks[i].bit_count():>5} "
            f"{table.aut_order[i]:>4} {table.orbit_size[i]:>5} {table.complement_class[i]:>4}"
        )
    return 0


def _cmd_positions(args) -> int:
    tbl = build_position_table(args.n)
    if args.count:
        print(len(tbl))
        return 0
    levels: dict[int, int] = {}
    for u in tbl.unknown_count:
        levels[u] = levels.get(u, 0) + 1
    print(f"{len(tbl)} canonical position classes for n={args.n} "
          f"(plus {tbl.class_table.num_classes} completed boards)")
    for u in sorted(levels, reverse=True):
        print(f"  {u:>2} unknown edges: {levels[u]:>4} classes")
    return 0


def _cmd_solve(args) -> int:
    tbl = build_position_table(args.n)
    prop = _load_property(args.n, args.property)
    report = solve(prop, tbl)
    order = class_order(tbl.class_table)
    print(f"property: {args.property} ({prop.size} of {tbl.class_table.num_classes} classes)")
    print(f"  complement-closed: {is_complement_closed(prop)}  monotone: {is_monotone(prop, order)}")
    print(f"{'evasive' if report.evasive else 'nonevasive'}, depth {report.depth}")
    if args.strategy or args.dot:
        tree = extract_strategy(prop, tbl)
        if args.strategy:
            with open(args.strategy, "w") as fh:
                json.dump(strategy_to_json_dict(tree), fh, indent=2)
            print(f"strategy written to {args.strategy}")
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(strategy_to_dot(tree, title=f"bob-{args.property}"))
            print(f"DOT rendering written to {args.dot}")
    return 0


def _format_report(report: ScanReport) -> str:
    c = report.counters
    lines = [
        f"mode {report.mode}, n={report.n}: "
        f"{report.next_index} of {report.candidates_total} candidates processed"
        + ("" if report.complete else " (partial)"),
        f"  examined {c.examined}, skipped {c.skipped_set_dual} set-dual "
        f"+ {c.skipped_graph_dual} graph-dual, pruned {c.pruned_parity} by parity",
        f"  evasive {c.evasive}, nonevasive {c.nonevasive}",
        f"{len(report.findings)} nontrivial nonevasive "
        + ("property" if len(report.findings) == 1 else "properties"),
    ]
    for f in report.findings:
        lines.append(
            f"  {len(f.classes)} classes, depth {f.depth}, "
            f"complement-closed={f.complement_closed}, replay={'ok' if f.replay_ok else 'FAILED'}"
        )
        lines.append(f"    classes: {list(f.classes)}")
    lines.append(f"wall time {report.wall_time:.1f}s")
    return "\n".join(lines)


def _cmd_scan(args) -> int:
    options = ScanOptions(
        use_dualities=not args.no_dualities,
        parity_prune=args.parity_prune,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
        workers=args.workers,
        limit=args.limit,
    )
    if args.mode == MODE_FULL:
        report = scan_full(args.n, options)
    elif args.mode == MODE_COMPLEMENT_CLOSED:
        report = scan_complement_closed(args.n, options)
    else:
        report = scan_sample(args.n, args.sample_size, args.seed, options)
    if args.json:
        doc = {
            "n": report.n,
            "mode": report.mode,
            "counters": report.counters.as_dict(),
            "candidates_total": report.candidates_total,
            "complete": report.complete,
            "next_index": report.next_index,
            "findings": [
                {
                    "classes": list(f.classes),
                    "depth": f.depth,
                    "complement_closed": f.complement_closed,
                    "replay_ok": f.replay_ok,
                }
                for f in report.findings
            ],
            "wall_time": report.wall_time,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(_format_report(report))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import build_app

    app = build_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evasilab",
        description="Exact analysis of the edge-probing game on small graph properties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphs", help="print the isomorphism class table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_graphs)

    p = sub.add_parser("positions", help="print the canonical position table summary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="print only the class count")
    p.set_defaults(fn=_cmd_positions)

    p = sub.add_parser("solve", help="solve one property exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--property", required=True, help="builtin:NAME or a property JSON file")
    p.add_argument("--strategy", help="write the decision tree as JSON here")
    p.add_argument("--dot", help="write a DOT rendering of the decision tree here")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("scan", help="sweep a space of candidate properties")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=(MODE_FULL, MODE_COMPLEMENT_CLOSED, MODE_SAMPLE), required=True)
    p.add_argument("--sample-size", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parity-prune", action="store_true")
    p.add_argument("--no-dualities", action="store_true", help="solve every candidate, skipping nothing")
    p.add_argument("--checkpoint", help="checkpoint JSON path for long sweeps")
    p.add_argument("--resume", action="store_true", help="continue from the checkpoint")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: EVASILAB_WORKERS or 1)")
    p.add_argument("--limit", type=int, default=None, help="process at most this many candidates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("serve", help="run the JSON game service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None, help="static directory with the browser client")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
