"""Zero forcing: the color-change rule, derived sets and chronological force lists.

A black vertex with exactly one white out-neighbour forces that neighbour
black.  The derived set of an initial black set is its closure under this
rule; it does not depend on the order in which forces are applied.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

from .graph import DiGraph, VertexSet, vertex_set

Order = Literal["ascending", "descending"]
Force = tuple[int, int]


@dataclass(frozen=True)
class ForcingState:
    initial: VertexSet
    black: VertexSet
    forces: tuple[Force, ...]

    @property
    def forced(self) -> VertexSet:
        return vertex_set(v for _, v in self.forces)


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with all arcs from ``left`` to ``right``."""

    left: VertexSet
    right: VertexSet
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", vertex_set(self.left))
        object.__setattr__(self, "right", vertex_set(self.right))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        if set(self.left) & set(self.right):
            raise ValueError("left and right vertex sets overlap")
        lset, rset = set(self.left), set(self.right)
        for u, v in self.arcs:
            if u not in lset or v not in rset:
                raise ValueError(f"arc ({u}, {v}) does not go from left to right")

    def out_neighbors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in (*self.left, *self.right)}
        for u, v in self.arcs:
            out[u].append(v)
        return {u: tuple(sorted(vs)) for u, vs in out.items()}

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


def run_forcing(
    out_neighbors: Mapping[int, Sequence[int]],
    initial: Iterable[int],
    order: Order = "ascending",
) -> ForcingState:
    """Apply the color-change rule to a fixed point.

    Forces are scheduled in rounds.  Each round visits the black vertices that
    became eligible since the previous round, sorted by id (ascending or
    descending), and performs every force that is still legal when its forcer
    is visited.  A per-vertex count of white out-neighbours keeps the total
    work linear in the size of the graph.
    """
    start = vertex_set(initial)
    black = set(start)
    in_nbrs: dict[int, list[int]] = {v: [] for v in out_neighbors}
    for u, vs in out_neighbors.items():
        for v in vs:
            in_nbrs[v].append(u)
    white_count = {u: sum(1 for v in vs if v not in black) for u, vs in out_neighbors.items()}

    forces: list[Force] = []
    candidates = {u for u in black if white_count[u] == 1}
    reverse = order == "descending"
    while candidates:
        round_ = sorted(candidates, reverse=reverse)
        candidates = set()
        for u in round_:
            if white_count[u] != 1:
                continue
            v = next(w for w in out_neighbors[u] if w not in black)
            black.add(v)
            forces.append((u, v))
            for w in in_nbrs[v]:
                white_count[w] -= 1
                if w in black and white_count[w] == 1:
                    candidates.add(w)
            if white_count[v] == 1:
                candidates.add(v)
    return ForcingState(initial=start, black=vertex_set(black), forces=tuple(forces))


def derived_set(g: DiGraph, c: Iterable[int], order: Order = "ascending") -> ForcingState:
    """Derived set of ``c`` in ``g`` together with one chronological list of forces."""
    return run_forcing(g.out_neighbors, g.check_vertices(c), order)


def is_zero_forcing_set(g: DiGraph, c: Iterable[int]) -> bool:
    return len(derived_set(g, c).black) == g.n


def bipartite_forces_all(b: BipartiteGraph) -> tuple[bool, int | None]:
    """Run zero forcing with ``b.left`` black and ``b.right`` white.

    Returns ``(True, None)`` when every right vertex is forced, otherwise
    ``(False, v)`` with ``v`` the smallest right vertex left white.
    """
    state = run_forcing(b.out_neighbors(), b.left)
    black = set(state.black)
    for v in b.right:
        if v not in black:
            return False, v
    return True, None


def replay_is_legal(out_neighbors: Mapping[int, Sequence[int]], state: ForcingState) -> bool:
    """Check that ``state.forces`` can be replayed step by step from ``state.initial``."""
    black = set(state.initial)
    for u, v in state.forces:
        if u not in black or v in black:
            return False
        white = [w for w in out_neighbors[u] if w not in black]
        if white != [v]:
            return False
        black.add(v)
    return black == set(state.black)
