"""Reading graphs from JSON or edge lists and writing JSON or DOT."""

from __future__ import annotations

import json
from collections.abc import Iterable
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .forcing import BipartiteGraph
from .graph import DiGraph, GraphError, VertexSet, vertex_set


class ParseError(GraphError):
    pass


@dataclass(frozen=True)
class GraphInput:
    graph: DiGraph
    leaders: VertexSet | None = None
    targets: VertexSet | None = None


def _vertex_list(g: DiGraph, value: Any, name: str) -> VertexSet:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError(f"field {name!r}: expected a list of integers")
    try:
        return g.check_vertices(value)
    except GraphError as exc:
        raise ParseError(f"field {name!r}: {exc}") from None


def parse_json(text: str) -> GraphInput:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("field 'n': expected a nonnegative integer")
    arcs = data.get("arcs", [])
    if not isinstance(arcs, list):
        raise ParseError("field 'arcs': expected a list of [u, v] pairs")
    pairs = []
    for k, arc in enumerate(arcs):
        if not (isinstance(arc, list) and len(arc) == 2 and all(isinstance(x, int) for x in arc)):
            raise ParseError(f"field 'arcs[{k}]': expected [u, v]")
        pairs.append((arc[0], arc[1]))
    try:
        g = DiGraph.from_arcs(n, pairs)
    except GraphError as exc:
        raise ParseError(f"field 'arcs': {exc}") from None
    leaders = _vertex_list(g, data["leaders"], "leaders") if "leaders" in data else None
    targets = _vertex_list(g, data["targets"], "targets") if "targets" in data else None
    return GraphInput(g, leaders, targets)


def parse_edgelist(text: str) -> GraphInput:
    """First non-comment line is ``n``; each following line is ``u v``."""
    n: int | None = None
    arcs: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise ParseError(f"line {lineno}: expected the vertex count")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        u, v = nums
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {lineno}: vertex out of range 1..{n}")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate arc ({u}, {v}), first on line {seen[(u, v)]}")
        seen[(u, v)] = lineno
        arcs.append((u, v))
    if n is None:
        raise ParseError("empty edge list: missing vertex count")
    return GraphInput(DiGraph.from_arcs(n, arcs))


def load_graph(data: bytes | str, fmt: str | None = None) -> GraphInput:
    """Parse a graph; ``fmt`` is ``json``, ``edgelist`` or None to sniff."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "edgelist"
    if fmt == "json":
        return parse_json(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ParseError(f"unknown format {fmt!r}")


def to_json(g: DiGraph, leaders: Iterable[int] | None = None, targets: Iterable[int] | None = None) -> str:
    """Canonical JSON: sorted arcs, optional sorted leader and target lists."""
    doc: dict[str, Any] = {"n": g.n, "arcs": [list(a) for a in sorted(g.arcs)]}
    if leaders is not None:
        doc["leaders"] = list(vertex_set(leaders))
    if targets is not None:
        doc["targets"] = list(vertex_set(targets))
    return json.dumps(doc, separators=(", ", ": "))


def to_edgelist(g: DiGraph) -> str:
    return "\n".join([str(g.n), *(f"{u} {v}" for u, v in sorted(g.arcs))]) + "\n"


def export_dot(
    g: DiGraph,
    leaders: Iterable[int] = (),
    targets: Iterable[int] = (),
    name: str = "G",
) -> str:
    """DOT text with leaders filled black and targets drawn as double circles."""
    lset, tset = set(leaders), set(targets)
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in g.vertices:
        attrs = []
        if v in tset:
            attrs.append("shape=doublecircle")
        if v in lset:
            attrs += ["style=filled", "fillcolor=black", "fontcolor=white"]
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    lines += [f"  {u} -> {v};" for u, v in sorted(g.arcs)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def layer_dot(b: BipartiteGraph, i: int) -> str:
    """DOT for one layer graph: derived set on the left (black), layer on the right."""
    lines = [f"digraph G{i} {{", "  rankdir=LR;", "  node [shape=circle];"]
    lines.append("  { rank=same; " + " ".join(f"{v} [style=filled, fillcolor=black, fontcolor=white];" for v in b.left) + " }")
    lines.append("  { rank=same; " + " ".join(f"{v};" for v in b.right) + " }")
    lines += [f"  {u} -> {v};" for u, v in b.sorted_arcs()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def fixture_names() -> list[str]:
    return sorted(p.name for p in resources.files("targetctl.fixtures").iterdir() if p.name.endswith((".json", ".txt")))


def load_fixture(name: str) -> GraphInput:
    """Load a bundled example graph, e.g. ``load_fixture("fig05")``."""
    base = resources.files("targetctl.fixtures")
    for suffix in (".json", ".txt", ""):
        path = base / f"{name}{suffix}"
        if path.is_file():
            return load_graph(path.read_text())
    raise FileNotFoundError(f"no fixture named {name!r}")
