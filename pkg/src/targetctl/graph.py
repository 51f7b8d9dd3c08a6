"""Directed graphs on vertices 1..n, shortest-path distances and selection matrices."""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

#: Distance to a vertex that cannot be reached.  Absorbs addition and
#: compares greater than every finite distance.
INFINITE = math.inf

Distance = int | float
VertexSet = tuple[int, ...]

DENSE_LIMIT = 64


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertices."""


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Sorted, duplicate-free tuple of vertex ids."""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class DiGraph:
    """Simple directed graph without self-loops on vertices ``1..n``.

    Instances are immutable; adjacency structures are built lazily and cached.
    Graphs with at most ``DENSE_LIMIT`` vertices also keep a dense boolean
    adjacency matrix for O(1) arc lookups.
    """

    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise GraphError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"arc ({u}, {v}) has an endpoint outside 1..{self.n}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> DiGraph:
        """Build a graph, rejecting duplicate arcs instead of merging them."""
        seen: set[tuple[int, int]] = set()
        for arc in arcs:
            u, v = arc
            if (u, v) in seen:
                raise GraphError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
        return cls(n, frozenset(seen))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def out_neighbors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out[u].append(v)
        return {u: tuple(sorted(vs)) for u, vs in out.items()}

    @cached_property
    def in_neighbors(self) -> dict[int, tuple[int, ...]]:
        inn: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            inn[v].append(u)
        return {v: tuple(sorted(us)) for v, us in inn.items()}

    @cached_property
    def _dense(self) -> list[list[bool]] | None:
        if self.n > DENSE_LIMIT:
            return None
        mat = [[False] * (self.n + 1) for _ in range(self.n + 1)]
        for u, v in self.arcs:
            mat[u][v] = True
        return mat

    def has_arc(self, u: int, v: int) -> bool:
        dense = self._dense
        if dense is not None:
            return 1 <= u <= self.n and 1 <= v <= self.n and dense[u][v]
        return (u, v) in self.arcs

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 1 <= v <= self.n):
            raise GraphError(f"vertex {v!r} outside 1..{self.n}")

    def check_vertices(self, vs: Iterable[int]) -> VertexSet:
        out = vertex_set(vs)
        for v in out:
            self.check_vertex(v)
        return out

    @cached_property
    def _distance_rows(self) -> dict[int, dict[int, int]]:
        return {}

    def distances_from(self, sources: Iterable[int]) -> dict[int, int]:
        """Multi-source BFS; maps every reachable vertex to its distance."""
        srcs = self.check_vertices(sources)
        if len(srcs) == 1:
            cache = self._distance_rows
            if srcs[0] not in cache:
                cache[srcs[0]] = self._bfs(srcs, self.out_neighbors)
            return cache[srcs[0]]
        return self._bfs(srcs, self.out_neighbors)

    def distances_to(self, target: int) -> dict[int, int]:
        """Reverse BFS: distance from every vertex that reaches ``target``."""
        self.check_vertex(target)
        return self._bfs((target,), self.in_neighbors)

    @staticmethod
    def _bfs(sources: VertexSet, adjacency: dict[int, tuple[int, ...]]) -> dict[int, int]:
        dist = {s: 0 for s in sources}
        queue = deque(sources)
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def reverse(self) -> DiGraph:
        return DiGraph(self.n, frozenset((v, u) for u, v in self.arcs))


def distance(g: DiGraph, u: int, v: int) -> Distance:
    """Length of a shortest directed path from ``u`` to ``v``; ``INFINITE`` if none."""
    g.check_vertex(u)
    g.check_vertex(v)
    return g.distances_from((u,)).get(v, INFINITE)


def set_distance(g: DiGraph, s: Iterable[int], j: int) -> Distance:
    """Minimum distance from any member of ``s`` to ``j``."""
    members = vertex_set(s)
    if not members:
        raise GraphError("set distance needs a nonempty source set")
    g.check_vertex(j)
    return g.distances_from(members).get(j, INFINITE)


def selection_matrix(n: int, subset: Iterable[int]) -> list[list[int]]:
    """The n x r 0/1 matrix whose column k has its single 1 in row ``subset[k]``.

    ``subset`` is taken in ascending order.  The input matrix of a leader set is
    ``selection_matrix(n, leaders)``; the output matrix of a target set is its
    transpose.
    """
    members = vertex_set(subset)
    for v in members:
        if not 1 <= v <= n:
            raise GraphError(f"vertex {v} outside 1..{n}")
    return [[1 if i == v else 0 for v in members] for i in range(1, n + 1)]
