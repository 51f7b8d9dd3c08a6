"""Leader selection: a minimum root set, greedily extended until every distance layer is forced."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any

from .forcing import bipartite_forces_all, derived_set
from .graph import INFINITE, DiGraph, GraphError, VertexSet, vertex_set
from .partition import build_layer_graph, partition_targets

EXACT_THRESHOLD = 40


@dataclass(frozen=True)
class CoverInstance:
    """Reachability matrix: ``rows[i][j-1] == 1`` iff vertex j reaches ``targets[i]``."""

    n: int
    targets: VertexSet
    rows: tuple[tuple[int, ...], ...]

    @property
    def column_masks(self) -> list[int]:
        """Bitmask of covered rows for every column (index 0 is vertex 1)."""
        masks = [0] * self.n
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if a:
                    masks[j] |= 1 << i
        return masks

    def covers(self, members: Iterable[int]) -> bool:
        chosen = set(members)
        return all(any(row[j - 1] for j in chosen) for row in self.rows)


@dataclass(frozen=True)
class RootSet:
    members: VertexSet
    optimal: bool


def build_cover(g: DiGraph, targets: Iterable[int]) -> CoverInstance:
    tset = g.check_vertices(targets)
    if not tset:
        raise GraphError("need at least one target")
    rows = []
    for t in tset:
        reach = g.distances_to(t)
        rows.append(tuple(1 if j in reach else 0 for j in g.vertices))
    return CoverInstance(n=g.n, targets=tset, rows=tuple(rows))


def greedy_cover(c: CoverInstance) -> VertexSet:
    """Repeatedly take the column covering most uncovered rows, lowest id on ties."""
    masks = c.column_masks
    uncovered = (1 << len(c.rows)) - 1
    chosen = []
    while uncovered:
        best = max(range(c.n), key=lambda j: ((masks[j] & uncovered).bit_count(), -j))
        if not masks[best] & uncovered:
            raise ValueError("cover instance has a row with no 1")
        chosen.append(best + 1)
        uncovered &= ~masks[best]
    return vertex_set(chosen)


class _CoverSearch:
    """Include-first depth-first search over columns in ascending order.

    With a size budget k the first cover found is the lexicographically
    smallest cover of size at most k.  Branches are cut when some uncovered
    row has no remaining column, or when the counting bound
    ceil(uncovered / best remaining coverage) exceeds the budget.
    """

    def __init__(self, c: CoverInstance) -> None:
        self.masks = c.column_masks
        self.n = c.n
        self.full = (1 << len(c.rows)) - 1
        # suffix_union[j]: rows coverable by columns j..n-1
        self.suffix_union = [0] * (self.n + 1)
        for j in range(self.n - 1, -1, -1):
            self.suffix_union[j] = self.suffix_union[j + 1] | self.masks[j]

    def _bound(self, uncovered: int, start: int) -> int:
        count = uncovered.bit_count()
        best = max(((m & uncovered).bit_count() for m in self.masks[start:]), default=0)
        if best == 0:
            return self.n + 1
        return -(-count // best)

    def covers(self, budget: int, start: int = 0, uncovered: int | None = None) -> Iterator[list[int]]:
        if uncovered is None:
            uncovered = self.full
        if not uncovered:
            yield []
            return
        if budget == 0 or start >= self.n:
            return
        if uncovered & ~self.suffix_union[start]:
            return
        if self._bound(uncovered, start) > budget:
            return
        m = self.masks[start]
        if m & uncovered:
            for rest in self.covers(budget - 1, start + 1, uncovered & ~m):
                yield [start + 1, *rest]
        yield from self.covers(budget, start + 1, uncovered)


def min_root_set(c: CoverInstance, exact_threshold: int = EXACT_THRESHOLD, heuristic: bool = False) -> RootSet:
    """Minimum set of columns covering every row.

    Up to ``exact_threshold`` vertices the optimum is proved by search and the
    lexicographically smallest optimum is returned; above it (or with
    ``heuristic``) the greedy cover is returned unproved.
    """
    greedy = greedy_cover(c)
    if heuristic or c.n > exact_threshold:
        return RootSet(greedy, optimal=False)
    search = _CoverSearch(c)
    lower = search._bound(search.full, 0)
    for k in range(lower, len(greedy) + 1):
        found = next(search.covers(k), None)
        if found is not None:
            return RootSet(vertex_set(found), optimal=True)
    raise AssertionError("greedy cover must be within the search budget")


def all_min_root_sets(c: CoverInstance, limit: int | None = None) -> list[VertexSet]:
    """Every minimum root set, in lexicographic order (at most ``limit``)."""
    k = len(min_root_set(c, exact_threshold=c.n).members)
    out = []
    for cover in _CoverSearch(c).covers(k):
        if len(cover) == k:
            out.append(tuple(cover))
            if limit is not None and len(out) >= limit:
                break
    return out


@dataclass
class LeaderSelection:
    leaders: VertexSet
    root_set: RootSet
    trace: list[dict[str, Any]] = field(default_factory=list)

    @property
    def additions(self) -> list[int]:
        return [e["vertex"] for e in self.trace if e["event"] == "add_leader"]


def select_leaders(
    g: DiGraph,
    targets: Iterable[int],
    exact_threshold: int = EXACT_THRESHOLD,
    heuristic: bool = False,
) -> LeaderSelection:
    """Two-phase leader selection.

    The minimum root set seeds the leaders.  Layers of targets at distance
    1, 2, ... from the derived set are checked in turn; at the first layer the
    derived set cannot force, its smallest unforced vertex becomes a leader and
    checking restarts from layer 1.  The loop ends once every target is closer
    than the next layer index.
    """
    tset = g.check_vertices(targets)
    root = min_root_set(build_cover(g, tset), exact_threshold, heuristic)
    leaders = set(root.members)
    trace: list[dict[str, Any]] = []

    def derive() -> tuple[VertexSet, dict[int, int]]:
        state = derived_set(g, leaders)
        trace.append({"event": "derived", "leaders": sorted(leaders), "derived": list(state.black)})
        return state.black, g.distances_from(state.black)

    derived, dist = derive()
    i = 1
    while True:
        part = partition_targets(g, derived, tset)
        layer = part.layer(i)
        ok, v = bipartite_forces_all(build_layer_graph(g, derived, layer, i))
        if ok:
            trace.append({"event": "layer_pass", "layer": i, "vertices": list(layer)})
            i += 1
        else:
            trace.append({"event": "layer_fail", "layer": i, "vertices": list(layer), "unforced": v})
            leaders.add(v)
            trace.append({"event": "add_leader", "vertex": v})
            derived, dist = derive()
            i = 1
        if all(dist.get(t, INFINITE) < i for t in tset):
            break
    return LeaderSelection(leaders=vertex_set(leaders), root_set=root, trace=trace)
