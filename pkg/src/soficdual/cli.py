"""Command line front end.

Exit codes: 0 success, 1 domain error (e.g. a reducible graph where an
irreducible one is needed), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .graph import (
    GraphError,
    LabeledGraph,
    NotIrreducibleError,
    adjacency_matrix,
    format_graph,
    graph_period,
    is_irreducible,
    is_mixing,
    labeled_isomorphic,
    parse_graph,
)
from .intlinalg import MatrixError, IntMatrix, format_matrix, matrix_to_json, parse_matrix, smith_normal_form
from .ktheory import (
    Convention,
    PrintedReference,
    duality_report,
    ruelle_ktheory,
    stable_ktheory,
    unstable_ktheory,
)
from .presentations import (
    count_periodic_points,
    find_synchronizing_word,
    is_almost_finite_type,
    is_left_closing,
    is_left_resolving,
    is_right_closing,
    is_right_resolving,
    left_fischer_cover,
    right_fischer_cover,
    same_shift,
)

PRINTED_SIDECAR = "printed.json"


class UsageError(Exception):
    pass


def read_graph(path: str) -> LabeledGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_graph(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def read_matrix(path: str | Path) -> IntMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return parse_matrix(text)
    except MatrixError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_printed_reference(graph_path: str, sidecar: str | None = None) -> PrintedReference | None:
    """Published data for ``graph_path``, looked up in a ``printed.json`` next to it.

    The sidecar maps graph file names to ``left_matrix``/``right_matrix``
    (paths relative to the sidecar) and ``left_snf``/``right_snf`` lists.
    """
    side_path = Path(sidecar) if sidecar else Path(graph_path).parent / PRINTED_SIDECAR
    if not side_path.is_file():
        if sidecar:
            raise UsageError(f"cannot read {sidecar}")
        return None
    try:
        table = json.loads(side_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{side_path}: {exc}") from exc
    entry = table.get(Path(graph_path).name)
    if entry is None:
        return None

    def mat(key):
        return read_matrix(side_path.parent / entry[key]) if key in entry else None

    def snf(key):
        return tuple(entry[key]) if key in entry else None

    return PrintedReference(mat("left_matrix"), mat("right_matrix"), snf("left_snf"), snf("right_snf"))


def _emit(out: TextIO, args, text: str, data) -> None:
    if args.json:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def cmd_check(args, out):
    g = read_graph(args.graph)
    irreducible = is_irreducible(g)
    flags = {
        "irreducible": irreducible,
        "mixing": is_mixing(g),
        "period": graph_period(g) if irreducible else None,
        "right-resolving": is_right_resolving(g),
        "left-resolving": is_left_resolving(g),
        "right-closing": is_right_closing(g),
        "left-closing": is_left_closing(g),
        "AFT": is_almost_finite_type(g) if irreducible else None,
    }
    text = "\n".join(f"{k}: {'n/a' if v is None else str(v).lower()}" for k, v in flags.items())
    _emit(out, args, text, flags)


def cmd_cover(args, out):
    g = read_graph(args.graph)
    cover = right_fischer_cover(g) if args.side == "right" else left_fischer_cover(g)
    text = format_graph(cover)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    data = {"side": args.side, "vertices": list(cover.vertices), "edges": [list(e) for e in sorted(cover.edges)]}
    if args.output and not args.json:
        out.write(f"wrote {args.side} Fischer cover ({cover.num_vertices} states) to {args.output}\n")
    else:
        _emit(out, args, text, data)


def cmd_matrix(args, out):
    g = read_graph(args.graph)
    order = args.order.split(",") if args.order else None
    try:
        m = adjacency_matrix(g, order)
    except GraphError as exc:
        raise UsageError(str(exc)) from exc
    _emit(out, args, format_matrix(m), matrix_to_json(m))


def cmd_snf(args, out):
    m = read_matrix(args.matrix)
    snf = smith_normal_form(m)
    text = " ".join(map(str, snf.invariant_factors))
    data = {"invariant_factors": list(snf.invariant_factors)}
    if args.certify:
        text += "\nU\n" + format_matrix(snf.U) + "D\n" + format_matrix(snf.D) + "V\n" + format_matrix(snf.V)
        data.update(U=matrix_to_json(snf.U), D=matrix_to_json(snf.D), V=matrix_to_json(snf.V))
    _emit(out, args, text, data)


def cmd_ktheory(args, out):
    if args.side:
        g = read_graph(args.file)
        pair = stable_ktheory(g) if args.side == "stable" else unstable_ktheory(g)
    else:
        pair = ruelle_ktheory(read_matrix(args.file))
    _emit(out, args, f"K0: {pair.k0}\nK1: {pair.k1}", pair.to_json())


def cmd_duality(args, out):
    g = read_graph(args.graph)
    printed = None if args.no_printed else load_printed_reference(args.graph, args.printed)
    report = duality_report(g, Convention(args.convention), printed)
    if args.json:
        _emit(out, args, "", report.to_json(shift=args.graph))
        return
    lines = [f"shift: {args.graph}", *report.narrative]
    if report.warnings:
        lines.append("warnings:")
        lines += [f"  - {w}" for w in report.warnings]
    out.write("\n".join(lines) + "\n")


def cmd_sync_word(args, out):
    g = read_graph(args.graph)
    word = find_synchronizing_word(g)
    if word is None:
        text = "none"
    elif not word:
        text = "(empty word)"
    else:
        text = " ".join(word)
    _emit(out, args, text, {"word": None if word is None else list(word)})


def cmd_periodic(args, out):
    g = read_graph(args.graph)
    counts = {n: count_periodic_points(g, n) for n in range(1, args.n + 1)}
    text = "\n".join(f"{n} {c}" for n, c in counts.items())
    _emit(out, args, text, {"counts": {str(n): c for n, c in counts.items()}})


def cmd_shift_eq(args, out):
    g1, g2 = read_graph(args.graph1), read_graph(args.graph2)
    equal = same_shift(g1, g2)
    data = {"same_shift": equal}
    if equal:
        data["cover_bijection"] = labeled_isomorphic(right_fischer_cover(g1), right_fischer_cover(g2))
    _emit(out, args, str(equal).lower(), data)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="write JSON to stdout")

    parser = argparse.ArgumentParser(prog="soficdual", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="structural flags of a presentation")
    p.add_argument("graph")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cover", parents=[common], help="left or right Fischer cover")
    p.add_argument("--side", choices=["right", "left"], required=True)
    p.add_argument("-o", "--output")
    p.add_argument("graph")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("matrix", parents=[common], help="adjacency matrix")
    p.add_argument("graph")
    p.add_argument("--order", help="comma-separated vertex order")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    p.add_argument("matrix")
    p.add_argument("--certify", action="store_true", help="also print U, D, V with U M V = D")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("ktheory", parents=[common], help="Ruelle algebra K-groups")
    p.add_argument("--side", choices=["stable", "unstable"], help="treat FILE as a graph and use this side")
    p.add_argument("file")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("duality", parents=[common], help="full duality obstruction report")
    p.add_argument("graph")
    p.add_argument("--convention", choices=[c.value for c in Convention], default=Convention.SHIFTED.value)
    p.add_argument("--printed", help=f"sidecar with published data (default: {PRINTED_SIDECAR} next to GRAPH)")
    p.add_argument("--no-printed", action="store_true", help="skip the comparison with published data")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("sync-word", parents=[common], help="shortest synchronizing word")
    p.add_argument("graph")
    p.set_defaults(func=cmd_sync_word)

    p = sub.add_parser("periodic", parents=[common], help="periodic point counts |Per_1| .. |Per_N|")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("shift-eq", parents=[common], help="do two presentations give the same shift")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=cmd_shift_eq)
    return parser


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, stdout)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (GraphError, MatrixError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (NotIrreducibleError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
