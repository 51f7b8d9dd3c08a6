"""Distance layers of target vertices around a derived set, and their bipartite graphs."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .forcing import BipartiteGraph
from .graph import DiGraph, GraphError, VertexSet, vertex_set


@dataclass(frozen=True)
class DistancePartition:
    """Targets outside ``base`` grouped by their distance to ``base``.

    ``layers[i - 1]`` holds the targets at distance exactly ``i``.  Trailing
    empty layers are trimmed; intermediate ones may be empty.
    """

    base: VertexSet
    layers: tuple[VertexSet, ...]
    unreachable: VertexSet

    @property
    def d(self) -> int:
        return len(self.layers)

    def layer(self, i: int) -> VertexSet:
        """Layer ``i`` (1-based); empty beyond ``d``."""
        if i < 1:
            raise ValueError("layers are numbered from 1")
        return self.layers[i - 1] if i <= self.d else ()

    def closer_than(self, i: int) -> VertexSet:
        return vertex_set(v for layer in self.layers[: max(i - 1, 0)] for v in layer)

    def farther_than(self, i: int) -> VertexSet:
        return vertex_set(v for layer in self.layers[i:] for v in layer)


def partition_targets(g: DiGraph, derived: Iterable[int], targets: Iterable[int]) -> DistancePartition:
    base = g.check_vertices(derived)
    if not base:
        raise GraphError("cannot partition around an empty derived set")
    tset = g.check_vertices(targets)
    dist = g.distances_from(base)
    bset = set(base)
    buckets: dict[int, list[int]] = {}
    unreachable = []
    for t in tset:
        if t in bset:
            continue
        if t not in dist:
            unreachable.append(t)
        else:
            buckets.setdefault(dist[t], []).append(t)
    d = max(buckets, default=0)
    layers = tuple(vertex_set(buckets.get(i, ())) for i in range(1, d + 1))
    return DistancePartition(base=base, layers=layers, unreachable=vertex_set(unreachable))


def build_layer_graph(g: DiGraph, derived: Iterable[int], layer: Iterable[int], i: int) -> BipartiteGraph:
    """Bipartite graph with an arc (j, k) whenever ``k`` is at distance exactly ``i`` from ``j``."""
    if i < 1:
        raise ValueError("layer index must be positive")
    left = g.check_vertices(derived)
    right = g.check_vertices(layer)
    arcs = {(j, k) for j in left for k in right if g.distances_from((j,)).get(k) == i}
    return BipartiteGraph(left=left, right=right, arcs=frozenset(arcs))


def layer_graphs(g: DiGraph, partition: DistancePartition) -> list[BipartiteGraph]:
    return [build_layer_graph(g, partition.base, partition.layer(i), i) for i in range(1, partition.d + 1)]
