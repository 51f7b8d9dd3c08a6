"""Command line interface: ``targetctl <subcommand> [options]``.

Exit status is 0 on success, 1 for a NEGATIVE verdict or a failed assertion
(``zf --check``, ``select --verify``, ``witness`` without a witness, ``rank``
below p) and 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import controllability as ctl
from .forcing import derived_set
from .graph import GraphError, VertexSet, vertex_set
from .io import GraphInput, export_dot, layer_dot, load_graph
from .leaders import EXACT_THRESHOLD, all_min_root_sets, build_cover, min_root_set, select_leaders
from .linalg import float_rank
from .partition import layer_graphs, partition_targets

SEED_ENV = "TARGETCTL_SEED"


class InputError(Exception):
    pass


def parse_vertices(text: str) -> VertexSet:
    """Parse ``1,2,5..8`` style vertex lists; ``a..b`` is inclusive."""
    out: list[int] = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = (int(x) for x in part.split("..", 1))
                if lo > hi:
                    raise InputError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise InputError(f"bad vertex list {text!r}") from None
    return vertex_set(out)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--input", "-i", default="-", help="graph file, '-' for stdin")
    p.add_argument("--format", choices=["json", "edgelist"], help="input format (sniffed if omitted)")
    p.add_argument("--leaders", help="leader vertices, e.g. 1,2 or 1..3")
    p.add_argument("--targets", help="target vertices, e.g. 1..8")
    p.add_argument("--seed", type=int, help=f"random seed (default ${SEED_ENV} or 0)")
    p.add_argument("--budget", type=int, default=ctl.DEFAULT_BUDGET, help="number of realizations to try")
    p.add_argument("--json", action="store_true", help="emit one JSON document on stdout")
    p.add_argument("--exact-threshold", type=int, default=EXACT_THRESHOLD)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="targetctl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common()]

    zf = sub.add_parser("zf", parents=common, help="derived set and chronological forces of --leaders")
    zf.add_argument("--check", action="store_true", help="exit 1 unless the set is zero forcing")

    layers = sub.add_parser("layers", parents=common, help="distance layers of targets and their bipartite graphs")
    layers.add_argument("--dot", metavar="DIR", help="write one DOT file per layer into DIR")

    check = sub.add_parser("check", parents=common, help="strong targeted controllability verdict")
    mode = check.add_mutually_exclusive_group()
    mode.add_argument("--sufficient", dest="mode", action="store_const", const="sufficient")
    mode.add_argument("--necessary", dest="mode", action="store_const", const="necessary")
    mode.add_argument("--full", dest="mode", action="store_const", const="full")
    check.set_defaults(mode="full")

    rank = sub.add_parser("rank", parents=common, help="exact output controllability rank of one realization")
    rank.add_argument("--policy", choices=["adjacency", "laplacian", "random"], default="adjacency")
    rank.add_argument("--index", type=int, default=0, help="sample index for the random policy")

    sub.add_parser("witness", parents=common, help="print a rank-deficient realization as JSON")

    rootset = sub.add_parser("rootset", parents=common, help="minimum root set of --targets")
    rootset.add_argument("--all-optima", action="store_true")
    rootset.add_argument("--heuristic", action="store_true", help="greedy cover only")

    select = sub.add_parser("select", parents=common, help="leader selection for --targets")
    select.add_argument("--verify", action="store_true", help="re-check the result with the full verdict")
    select.add_argument("--trace", metavar="PATH", help="write the selection trace as JSON")
    select.add_argument("--heuristic", action="store_true", help="greedy root set only")

    dot = sub.add_parser("export-dot", parents=common, help="DOT rendering of the graph")
    dot.add_argument("--output", "-o", help="write to file instead of stdout")
    return parser


def _read_input(args: argparse.Namespace) -> GraphInput:
    try:
        data = sys.stdin.buffer.read() if args.input == "-" else Path(args.input).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    return load_graph(data, args.format)


def _resolve(args: argparse.Namespace, source: GraphInput) -> tuple[VertexSet | None, VertexSet | None]:
    leaders = parse_vertices(args.leaders) if args.leaders is not None else source.leaders
    targets = parse_vertices(args.targets) if args.targets is not None else source.targets
    for name, vs in (("leaders", leaders), ("targets", targets)):
        if vs is not None:
            try:
                source.graph.check_vertices(vs)
            except GraphError as exc:
                raise InputError(f"--{name}: {exc}") from None
    return leaders, targets


def _need(value: VertexSet | None, name: str, allow_empty: bool = False) -> VertexSet:
    if value is None or (not value and not allow_empty):
        raise InputError(f"this command needs nonempty --{name}")
    return value


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise InputError(f"${SEED_ENV} is not an integer: {env!r}") from None
    if not 0 <= seed < 2**64:
        raise InputError("seed must be a 64-bit unsigned integer")
    return seed


def _emit(args: argparse.Namespace, doc: dict[str, Any], lines: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def _fmt(vs: Sequence[int]) -> str:
    return "{" + ", ".join(map(str, vs)) + "}"


def cmd_zf(args: argparse.Namespace, source: GraphInput) -> int:
    leaders, _ = _resolve(args, source)
    initial = _need(leaders, "leaders", allow_empty=True)
    state = derived_set(source.graph, initial)
    zfs = len(state.black) == source.graph.n
    doc = {"initial": list(initial), "derived": list(state.black), "forces": [list(f) for f in state.forces], "zero_forcing": zfs}
    lines = [f"derived set: {_fmt(state.black)}", *(f"{u} -> {v}" for u, v in state.forces), f"zero forcing set: {'yes' if zfs else 'no'}"]
    _emit(args, doc, lines)
    return 1 if args.check and not zfs else 0


def cmd_layers(args: argparse.Namespace, source: GraphInput) -> int:
    leaders, targets = _resolve(args, source)
    g = source.graph
    state = derived_set(g, _need(leaders, "leaders"))
    part = partition_targets(g, state.black, _need(targets, "targets"))
    graphs = layer_graphs(g, part)
    doc = {
        "derived": list(state.black),
        "layers": [{"layer": i, "vertices": list(b.right), "arcs": [list(a) for a in b.sorted_arcs()]} for i, b in enumerate(graphs, 1)],
        "unreachable": list(part.unreachable),
    }
    lines = [f"derived set: {_fmt(state.black)}"]
    for i, b in enumerate(graphs, 1):
        lines.append(f"V_{i} = {_fmt(b.right)}")
        lines += [f"  {u} -> {v}" for u, v in b.sorted_arcs()]
    if part.unreachable:
        lines.append(f"unreachable: {_fmt(part.unreachable)}")
    if args.dot:
        out = Path(args.dot)
        out.mkdir(parents=True, exist_ok=True)
        for i, b in enumerate(graphs, 1):
            (out / f"layer{i}.dot").write_text(layer_dot(b, i))
    _emit(args, doc, lines)
    return 0


def _verdict_lines(v: ctl.Verdict) -> list[str]:
    cert = v.certificate
    lines = [f"status: {v.status.value}", f"reason: {cert['kind']}"]
    if cert["kind"] == "layer_not_forced":
        lines.append(f"layer {cert['layer']} not forced; first unforced vertex {cert['vertex']}")
    elif cert["kind"] == "unreachable_targets":
        lines.append(f"unreachable targets: {_fmt(cert['targets'])}")
    elif cert["kind"] == "rank_deficient_realization":
        lines.append(f"witness from {cert['attempt']}: rank {cert['rank']} < p = {cert['p']}")
    elif cert["kind"] == "inconclusive":
        lines.append(f"full-rank samples: {cert['full_rank_samples']}")
    elif cert["kind"] == "necessary_condition_failed":
        lines.append(f"never forced: {_fmt(cert['white'])}")
    lines.append(f"samples: {v.samples}  seed: {v.seed}")
    return lines


def cmd_check(args: argparse.Namespace, source: GraphInput) -> int:
    leaders, targets = _resolve(args, source)
    lset, tset = _need(leaders, "leaders"), _need(targets, "targets")
    seed = _seed(args)
    if args.mode == "sufficient":
        v = ctl.check_sufficient(source.graph, lset, tset)
    elif args.mode == "necessary":
        v = ctl.check_necessary(source.graph, lset, tset)
    else:
        v = ctl.combined_verdict(source.graph, lset, tset, args.budget, seed)
    v = ctl.Verdict(v.status, v.certificate, v.samples, seed)
    _emit(args, v.to_dict(), _verdict_lines(v))
    return 1 if v.status is ctl.Status.NEGATIVE else 0


def cmd_rank(args: argparse.Namespace, source: GraphInput) -> int:
    leaders, targets = _resolve(args, source)
    lset, tset = _need(leaders, "leaders"), _need(targets, "targets")
    seed = _seed(args)
    r = ctl.sample_qd(source.graph, seed, args.policy, args.index).with_io(lset, tset)
    rank = ctl.output_ctrb_rank(r)
    numeric = float_rank(ctl.output_ctrb_matrix(r))
    member = ctl.is_distance_preserving(r)
    doc = {"policy": args.policy, "seed": seed, "index": args.index, "rank": rank, "p": r.p, "float_rank": numeric, "distance_preserving": member}
    lines = [f"policy: {args.policy}", f"rank: {rank} (p = {r.p})", f"float rank: {numeric}", f"distance-information preserving: {member}"]
    _emit(args, doc, lines)
    return 1 if rank < r.p else 0


def cmd_witness(args: argparse.Namespace, source: GraphInput) -> int:
    leaders, targets = _resolve(args, source)
    lset, tset = _need(leaders, "leaders"), _need(targets, "targets")
    seed = _seed(args)
    result = ctl.falsify(source.graph, lset, tset, args.budget, seed)
    if result.witness is None:
        print(json.dumps({"witness": None, "samples": result.samples, "seed": seed}))
        print(f"no witness in {result.samples} samples", file=sys.stderr)
        return 1
    r = result.witness
    doc = {"witness": r.to_dict(), "rank": ctl.output_ctrb_rank(r), "p": r.p, "attempt": result.attempts[-1], "samples": result.samples, "seed": seed}
    print(json.dumps(doc, indent=2))
    return 0


def cmd_rootset(args: argparse.Namespace, source: GraphInput) -> int:
    _, targets = _resolve(args, source)
    cover = build_cover(source.graph, _need(targets, "targets"))
    root = min_root_set(cover, args.exact_threshold, args.heuristic)
    doc: dict[str, Any] = {"root_set": list(root.members), "optimal": root.optimal, "A": [list(r) for r in cover.rows]}
    lines = [f"root set: {_fmt(root.members)} ({'optimal' if root.optimal else 'greedy'})"]
    if args.all_optima:
        optima = all_min_root_sets(cover)
        doc["optima"] = [list(o) for o in optima]
        doc["optimum_count"] = len(optima)
        lines.append(f"{len(optima)} minimum root sets:")
        lines += [f"  {_fmt(o)}" for o in optima]
    _emit(args, doc, lines)
    return 0


def cmd_select(args: argparse.Namespace, source: GraphInput) -> int:
    _, targets = _resolve(args, source)
    tset = _need(targets, "targets")
    sel = select_leaders(source.graph, tset, args.exact_threshold, args.heuristic)
    doc: dict[str, Any] = {"leaders": list(sel.leaders), "root_set": list(sel.root_set.members), "root_set_optimal": sel.root_set.optimal}
    lines = [f"root set: {_fmt(sel.root_set.members)}", f"added: {', '.join(map(str, sel.additions)) or 'none'}", f"leaders: {_fmt(sel.leaders)}"]
    if args.trace:
        Path(args.trace).write_text(json.dumps(sel.trace, indent=2) + "\n")
    status = 0
    if args.verify:
        v = ctl.combined_verdict(source.graph, sel.leaders, tset, args.budget, _seed(args))
        doc["verify"] = v.status.value
        lines.append(f"verify: {v.status.value}")
        if v.status is not ctl.Status.POSITIVE:
            print("selected leaders failed verification", file=sys.stderr)
            status = 1
    _emit(args, doc, lines)
    return status


def cmd_export_dot(args: argparse.Namespace, source: GraphInput) -> int:
    leaders, targets = _resolve(args, source)
    text = export_dot(source.graph, leaders or (), targets or ())
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "zf": cmd_zf,
    "layers": cmd_layers,
    "check": cmd_check,
    "rank": cmd_rank,
    "witness": cmd_witness,
    "rootset": cmd_rootset,
    "select": cmd_select,
    "export-dot": cmd_export_dot,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.budget < 1:
            raise InputError("--budget must be at least 1")
        source = _read_input(args)
        return COMMANDS[args.command](args, source)
    except (InputError, GraphError) as exc:
        print(f"targetctl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
