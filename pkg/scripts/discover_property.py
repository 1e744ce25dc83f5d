#!/usr/bin/env python3
"""Find the nonevasive 5-vertex properties and export everything about them.

Sweeps the 2^18 complement-closed candidate properties, prints the two
findings with their member graphs, and writes, for the 11-class one:

  discovered_property.json   the property file (class-id form)
  discovered_strategy.json   Bob's decision tree
  discovered_strategy.dot    DOT rendering (present answers solid, absent dashed)

Run from the repository root:  python3 scripts/discover_property.py [outdir]
"""

import json
import sys
from pathlib import Path

from evasilab.exports import strategy_to_dot, strategy_to_json_dict
from evasilab.graphs import LabeledGraph
from evasilab.positions import build_position_table
from evasilab.properties import Property
from evasilab.scanner import scan_complement_closed
from evasilab.solver import extract_strategy, replay_verify, solve


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)

    report = scan_complement_closed(5)
    print(f"swept {report.candidates_total} complement-closed candidates "
          f"in {report.wall_time:.1f}s")
    tbl = build_position_table(5)
    ct = tbl.class_table
    for finding in report.findings:
        print(f"\nnonevasive property with {len(finding.classes)} classes, "
              f"solve depth {finding.depth}:")
        for c in finding.classes:
            g = LabeledGraph(5, ct.masks[c])
            print(f"  class {c:>2}  code {ct.codes[c]}  {g.edge_count()} edges  {g.edge_list()}")

    small = min(report.findings, key=lambda f: len(f.classes))
    prop = Property.from_class_ids(5, small.classes)
    solve_report = solve(prop, tbl)
    tree = extract_strategy(prop, tbl)
    audit = replay_verify(tree, prop, tbl)
    assert audit.ok, audit.failures
    print(f"\nstrategy for the {prop.size}-class property: "
          f"{audit.paths} answer paths, longest {audit.max_questions} questions "
          f"(worst case {solve_report.depth})")

    (out_dir / "discovered_property.json").write_text(
        json.dumps({"n": 5, "classes": list(prop.class_ids())}, indent=1)
    )
    (out_dir / "discovered_strategy.json").write_text(
        json.dumps(strategy_to_json_dict(tree), indent=1)
    )
    (out_dir / "discovered_strategy.dot").write_text(strategy_to_dot(tree, "discovered"))
    print(f"files written to {out_dir.resolve()}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
