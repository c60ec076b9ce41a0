#!/usr/bin/env python3
"""Export a batch of matching graphs (hexagon graphs and quotients) to files.

Example:
    python scripts/export_graphs.py --out /tmp/graphs --max-side 2
"""

import argparse
import pathlib
import sys

from ppcount.cli import graph_to_dot, graph_to_json
from ppcount.hexgrid import build_graph, build_hexagon
from ppcount.symmetry import CLASSES, quotient_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--max-side", type=int, default=2)
    ap.add_argument("--format", choices=("dot", "json"), default="json")
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    render = graph_to_json if args.format == "json" else graph_to_dot
    n = 0
    for a in range(1, args.max_side + 1):
        for b in range(1, args.max_side + 1):
            for c in range(1, args.max_side + 1):
                g = build_graph(build_hexagon(a, b, c))
                (out / f"z_{a}{b}{c}.{args.format}").write_text(render(g))
                n += 1
                for cid in sorted(CLASSES):
                    if not CLASSES[cid].box_fixed((a, b, c)):
                        continue
                    q = quotient_graph(build_hexagon(a, b, c), CLASSES[cid])
                    (out / f"quotient_c{cid}_{a}{b}{c}.{args.format}").write_text(render(q))
                    n += 1
    print(f"wrote {n} graphs to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
