"""Command-line front end: counting, verification, tables, graph export.

Exit codes: 0 success / full agreement, 1 verification mismatch, 2 usage
error.  All outputs are deterministic except the timing column of the
verification CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .exactalg import QPoly, det
from .formulas import n_class, n_class_via_ratios
from .hexgrid import PlanarMultigraph, build_hexagon, build_graph, q_weight_graph
from .kasteleyn import (
    bipartite_matrix,
    flat_orientation,
    flat_signing,
    weighted_matching_sum,
)
from .oracle import count_symmetric, q_sum
from .symmetry import CLASSES, quotient_graph

RATIO_CLASSES = (1, 3, 5, 9)


class UsageError(ValueError):
    pass


def parse_dims(text: str) -> Tuple[int, int, int]:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad dims {text!r}; expected a,b,c") from None
    if len(parts) != 3 or any(p < 0 for p in parts):
        raise UsageError(f"bad dims {text!r}; expected three nonnegative sides")
    return parts


def matrix_count(class_id: int, dims) -> int:
    region = build_hexagon(*dims)
    q = quotient_graph(region, CLASSES[class_id])
    return weighted_matching_sum(q)


def q_matrix_count(dims) -> QPoly:
    """Normalized q-weighted determinant: coefficient of q^k counts volume-k
    partitions; the weight of the empty partition is divided out."""
    region = build_hexagon(*dims)
    g = q_weight_graph(region)
    if g.n_vertices == 0:
        return QPoly.const(1)
    sg = flat_signing(g)
    m = bipartite_matrix(sg)
    if m is None:
        return QPoly()
    d = det(m)
    if isinstance(d, int):
        d = QPoly.const(d)
    if d.is_zero():
        return d
    return d.shift(-d.low_degree()).sign_normalized()


def compute_count(class_id: int, dims, method: str, q_flag: bool = False):
    if class_id not in CLASSES:
        raise UsageError(f"class must be 1..10, got {class_id}")
    if q_flag:
        if class_id != 1:
            raise UsageError("q-enumeration is only supported for class 1")
        if method == "matrix":
            return q_matrix_count(dims)
        if method == "oracle":
            return q_sum(*dims)
        raise UsageError(f"q-enumeration does not support method {method!r}")
    if method == "formula":
        return n_class(class_id, dims)
    if method == "matrix":
        return matrix_count(class_id, dims)
    if method == "oracle":
        return count_symmetric(class_id, *dims)
    if method == "ratios":
        if class_id not in RATIO_CLASSES:
            raise UsageError(f"method 'ratios' supports classes {RATIO_CLASSES}")
        return n_class_via_ratios(class_id, dims)
    raise UsageError(f"unknown method {method!r}")


def format_value(v) -> str:
    return str(v)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@dataclass
class RunRecord:
    class_id: int
    dims: Tuple[int, int, int]
    method: str
    value: int
    micros: int


@dataclass
class RunReport:
    records: List[RunRecord] = field(default_factory=list)
    mismatches: List[Tuple[int, Tuple[int, int, int]]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.mismatches


def boxes_for_class(class_id: int, max_side: int):
    out = []
    for a in range(max_side + 1):
        for b in range(max_side + 1):
            for c in range(max_side + 1):
                if CLASSES[class_id].box_fixed((a, b, c)):
                    out.append((a, b, c))
    return out


def run_verify(max_side: int, classes=None, methods=("formula", "matrix", "oracle")) -> RunReport:
    report = RunReport()
    for class_id in sorted(classes or CLASSES):
        for dims in boxes_for_class(class_id, max_side):
            values = {}
            for method in methods:
                t0 = time.perf_counter()
                values[method] = compute_count(class_id, dims, method)
                dt = int((time.perf_counter() - t0) * 1e6)
                report.records.append(RunRecord(class_id, dims, method, values[method], dt))
            if len(set(values.values())) != 1:
                report.mismatches.append((class_id, dims))
    return report


def report_csv(report: RunReport) -> str:
    lines = ["class,a,b,c,method,value,micros"]
    for r in report.records:
        a, b, c = r.dims
        lines.append(f"{r.class_id},{a},{b},{c},{r.method},{r.value},{r.micros}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

TABLE_PATTERNS = {
    1: lambda k: (k, k, k),
    2: lambda k: (k, k, k),
    3: lambda k: (k, k, k),
    4: lambda k: (k, k, k),
    5: lambda k: (2 * k, 2 * k, 2 * k),
    6: lambda k: (k, k, 2 * k),
    7: lambda k: (2 * k, 2 * k, 2 * k),
    8: lambda k: (2 * k, 2 * k, 2 * k),
    9: lambda k: (2 * k, 2 * k, 2 * k),
    10: lambda k: (2 * k, 2 * k, 2 * k),
}


def table_rows(max_a: int):
    rows = []
    for class_id in sorted(CLASSES):
        for k in range(1, max_a + 1):
            dims = TABLE_PATTERNS[class_id](k)
            rows.append((class_id, dims, n_class(class_id, dims)))
    return rows


def format_table(rows, fmt: str) -> str:
    if fmt == "csv":
        out = ["class,a,b,c,value"]
        for class_id, (a, b, c), v in rows:
            out.append(f"{class_id},{a},{b},{c},{v}")
        return "\n".join(out) + "\n"
    out = ["| class | box | count |", "| --- | --- | --- |"]
    for class_id, dims, v in rows:
        out.append(f"| {class_id} | {dims[0]}x{dims[1]}x{dims[2]} | {v} |")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def _weight_str(w) -> str:
    return str(w)


def graph_to_json(g: PlanarMultigraph, signs=None, heads=None) -> str:
    edges = []
    for e in sorted(g.edges, key=lambda e: e.eid):
        rec = {"u": str(e.u), "v": str(e.v), "w": _weight_str(e.weight), "id": e.eid}
        if signs is not None:
            rec["sign"] = signs[e.eid]
        if heads is not None:
            rec["head"] = str(heads[e.eid])
        edges.append(rec)
    data = {
        "vertices": sorted(str(v) for v in g.vertices),
        "edges": edges,
        "rotation": {
            str(v): [eid for eid, _ in g.rotation.get(v, [])]
            for v in sorted(g.vertices, key=str)
        },
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def graph_to_dot(g: PlanarMultigraph, signs=None, heads=None) -> str:
    lines = ["graph G {"]
    for e in sorted(g.edges, key=lambda e: e.eid):
        attrs = [f'label="{_weight_str(e.weight)}"']
        if signs is not None:
            attrs.append(f'sign="{signs[e.eid]}"')
        if heads is not None:
            attrs.append(f'head="{heads[e.eid]}"')
        lines.append(f'  "{e.u}" -- "{e.v}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_export(kind: str, class_id: Optional[int], dims, fmt: str, attrs: str) -> str:
    region = build_hexagon(*dims)
    if kind == "z":
        g = build_graph(region)
    elif kind == "quotient":
        if class_id is None:
            raise UsageError("--class is required for quotient export")
        g = quotient_graph(region, CLASSES[class_id])
    else:
        raise UsageError(f"unknown export kind {kind!r}")
    signs = heads = None
    if attrs == "signs":
        if g.bipartition is None:
            raise UsageError("sign export needs a bipartite graph")
        signs = flat_signing(g).signs
    elif attrs == "orientation":
        if g.n_vertices % 2:
            raise UsageError("orientation export needs an even vertex count")
        heads = flat_orientation(g).heads
    elif attrs != "none":
        raise UsageError(f"unknown attribute kind {attrs!r}")
    return graph_to_json(g, signs, heads) if fmt == "json" else graph_to_dot(g, signs, heads)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ppcount",
        description="Count plane partitions in the ten symmetry classes by "
        "closed formulas, Kasteleyn determinants/Pfaffians, or brute force.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("count", help="count one class in one box")
    pc.add_argument("--class", dest="class_id", type=int, required=True)
    pc.add_argument("--dims", required=True, help="a,b,c")
    pc.add_argument(
        "--method", choices=("formula", "matrix", "oracle", "ratios"), default="formula"
    )
    pc.add_argument("--q", action="store_true", help="q-enumeration (class 1 only)")
    pc.add_argument("--json", action="store_true")

    pv = sub.add_parser("verify", help="cross-check formula vs matrix vs oracle")
    pv.add_argument("--max-side", type=int, required=True)
    pv.add_argument("--classes", default=None, help="comma-separated class ids")

    pt = sub.add_parser("table", help="counts for the standard box patterns")
    pt.add_argument("--max-a", type=int, required=True)
    pt.add_argument("--format", choices=("markdown", "csv"), default="markdown")

    pe = sub.add_parser("export", help="export a matching graph")
    pe.add_argument("--kind", choices=("z", "quotient"), required=True)
    pe.add_argument("--class", dest="class_id", type=int, default=None)
    pe.add_argument("--dims", required=True)
    pe.add_argument("--format", choices=("dot", "json"), default="json")
    pe.add_argument(
        "--with", dest="attrs", choices=("signs", "orientation", "none"), default="none"
    )
    pe.add_argument("-o", "--output", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.cmd == "count":
            value = compute_count(args.class_id, parse_dims(args.dims), args.method, args.q)
            if args.json:
                payload = {
                    "class": args.class_id,
                    "dims": list(parse_dims(args.dims)),
                    "method": args.method,
                    "q": bool(args.q),
                    "value": format_value(value),
                }
                print(json.dumps(payload, sort_keys=True))
            else:
                print(format_value(value))
            return 0
        if args.cmd == "verify":
            classes = None
            if args.classes:
                classes = [int(x) for x in args.classes.split(",")]
                if any(c not in CLASSES for c in classes):
                    raise UsageError(f"bad class list {args.classes!r}")
            if args.max_side < 0:
                raise UsageError("--max-side must be nonnegative")
            report = run_verify(args.max_side, classes)
            sys.stdout.write(report_csv(report))
            if report.verdict:
                print("verify: all methods agree", file=sys.stderr)
                return 0
            for class_id, dims in report.mismatches:
                print(f"verify: MISMATCH class {class_id} box {dims}", file=sys.stderr)
            return 1
        if args.cmd == "table":
            if args.max_a < 1:
                raise UsageError("--max-a must be at least 1")
            sys.stdout.write(format_table(table_rows(args.max_a), args.format))
            return 0
        if args.cmd == "export":
            text = run_export(
                args.kind, args.class_id, parse_dims(args.dims), args.format, args.attrs
            )
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        raise UsageError(f"unknown command {args.cmd!r}")
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
