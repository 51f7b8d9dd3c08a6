"""Strong targeted controllability verdicts for distance-information preserving matrices.

Two graph conditions bracket the property: a sufficient one (the derived set
of the leaders forces every distance layer of targets) and a necessary one
(leaders plus non-targets form a zero forcing set).  Between them, concrete
realizations are sampled and their output controllability matrices are ranked
exactly; one rank-deficient sample settles the question negatively.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any

import numpy as np

from .forcing import bipartite_forces_all, derived_set, is_zero_forcing_set, run_forcing
from .graph import DiGraph, VertexSet, selection_matrix, vertex_set
from .linalg import ColumnSpan, Scalar, format_scalar, parse_scalar
from .partition import build_layer_graph, partition_targets

WEIGHT_BOUND = 10
RETRY_CAP = 50
DEFAULT_BUDGET = 200


class RealizationError(ValueError):
    """A matrix does not have the zero pattern required by its graph."""


class SupportInvariantError(AssertionError):
    """A power of a realization has a nonzero entry the graph forbids."""


class SamplingError(RuntimeError):
    pass


class Policy(str, enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    RANDOM = "random"
    NULL_VECTOR = "null-vector"


class Status(str, enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Realization:
    """A state matrix ``X`` for graph ``g`` plus leader and target sets.

    ``X[i-1][j-1]`` is the weight of arc (j, i); off the diagonal it is nonzero
    exactly on arcs.  Diagonal entries are unconstrained.
    """

    g: DiGraph
    X: tuple[tuple[Scalar, ...], ...]
    leaders: VertexSet = ()
    targets: VertexSet = ()
    policy: str | None = None

    def __post_init__(self) -> None:
        n = self.g.n
        rows = tuple(tuple(row) for row in self.X)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise RealizationError(f"X must be {n}x{n}")
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j and (rows[i - 1][j - 1] != 0) != self.g.has_arc(j, i):
                    raise RealizationError(f"X[{i}][{j}] does not match arc ({j}, {i})")
        object.__setattr__(self, "X", rows)
        object.__setattr__(self, "leaders", self.g.check_vertices(self.leaders))
        object.__setattr__(self, "targets", self.g.check_vertices(self.targets))

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def p(self) -> int:
        return len(self.targets)

    @property
    def U(self) -> list[list[int]]:
        return selection_matrix(self.n, self.leaders)

    @property
    def H(self) -> list[list[int]]:
        return [list(col) for col in zip(*selection_matrix(self.n, self.targets))]

    @cached_property
    def _columns(self) -> dict[int, list[tuple[int, Scalar]]]:
        cols: dict[int, list[tuple[int, Scalar]]] = {}
        for j in range(1, self.n + 1):
            cols[j] = [(i, self.X[i - 1][j - 1]) for i in range(1, self.n + 1) if self.X[i - 1][j - 1] != 0]
        return cols

    def apply(self, v: dict[int, Scalar]) -> dict[int, Scalar]:
        """Sparse product ``X v`` with vectors stored as {vertex: value}."""
        out: dict[int, Scalar] = {}
        for j, vj in v.items():
            for i, x in self._columns[j]:
                out[i] = out.get(i, 0) + x * vj
        return {i: x for i, x in out.items() if x != 0}

    def with_io(self, leaders: Iterable[int], targets: Iterable[int]) -> Realization:
        return replace(self, leaders=vertex_set(leaders), targets=vertex_set(targets))

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "arcs": sorted([u, v] for u, v in self.g.arcs),
            "leaders": list(self.leaders),
            "targets": list(self.targets),
            "policy": self.policy,
            "X": [[format_scalar(x) for x in row] for row in self.X],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Realization:
        g = DiGraph.from_arcs(int(data["n"]), (tuple(a) for a in data["arcs"]))
        X = tuple(tuple(parse_scalar(x) for x in row) for row in data["X"])
        return cls(g, X, tuple(data.get("leaders", ())), tuple(data.get("targets", ())), data.get("policy"))


def _output_blocks(r: Realization, inputs: VertexSet) -> Iterable[list[Scalar]]:
    """Columns of (HU, HXU, ..., HX^{n-1}U), one power at a time."""
    vecs = [{l: 1} for l in inputs]
    for k in range(r.n):
        if k:
            vecs = [r.apply(v) for v in vecs]
        for v in vecs:
            yield [v.get(t, 0) for t in r.targets]
        if not any(vecs):
            return


def output_ctrb_rank(r: Realization, inputs: Iterable[int] | None = None) -> int:
    """Exact rank of the output controllability matrix of ``r``.

    ``inputs`` overrides the columns of U (defaults to the leaders).  Columns
    are added power by power and the computation stops once rank p is reached.
    """
    cols = r.leaders if inputs is None else r.g.check_vertices(inputs)
    span = ColumnSpan(r.p)
    if span.full:
        return 0
    for column in _output_blocks(r, cols):
        span.add(column)
        if span.full:
            break
    return span.rank


def output_ctrb_matrix(r: Realization) -> list[list[Scalar]]:
    """The full p x (n*m) output controllability matrix."""
    m = len(r.leaders)
    cols = list(_output_blocks(r, r.leaders))
    cols += [[0] * r.p] * (r.n * m - len(cols))
    return [list(row) for row in zip(*cols)] if cols else [[] for _ in range(r.p)]


def is_distance_preserving(r: Realization) -> bool:
    """True if (X^k)_{ij} != 0 whenever the distance from j to i is exactly k.

    Powers are propagated column by column from each source vertex.  Entries
    farther than k must vanish for any matrix with the graph's zero pattern;
    a nonzero there raises ``SupportInvariantError``.
    """
    g = r.g
    preserving = True
    for j in g.vertices:
        dist = g.distances_from((j,))
        horizon = max(dist.values())
        v: dict[int, Scalar] = {j: 1}
        for k in range(1, horizon + 1):
            v = r.apply(v)
            for i, x in v.items():
                di = dist.get(i)
                if i != j and (di is None or di > k):
                    raise SupportInvariantError(f"(X^{k})[{i}][{j}] = {x} but distance is {di}")
            for i, di in dist.items():
                if di == k and v.get(i, 0) == 0:
                    preserving = False
    return preserving


def _rng(seed: int, index: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.default_rng([seed, index])


def _nonzero_ints(rng: np.random.Generator, size: int, bound: int) -> list[int]:
    vals = rng.integers(1, bound + 1, size=size) * rng.choice([-1, 1], size=size)
    return [int(x) for x in vals]


def _matrix(n: int, entries: dict[tuple[int, int], Scalar]) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(tuple(entries.get((i, j), 0) for j in range(1, n + 1)) for i in range(1, n + 1))


def adjacency_realization(g: DiGraph) -> Realization:
    return Realization(g, _matrix(g.n, {(v, u): 1 for u, v in g.arcs}), policy=Policy.ADJACENCY.value)


def laplacian_realization(g: DiGraph) -> Realization:
    """X = A - D_out with A the 0/1 pattern and D_out the out-degree diagonal."""
    entries: dict[tuple[int, int], Scalar] = {(v, u): 1 for u, v in g.arcs}
    for u in g.vertices:
        deg = len(g.out_neighbors[u])
        if deg:
            entries[(u, u)] = -deg
    return Realization(g, _matrix(g.n, entries), policy=Policy.LAPLACIAN.value)


def _scale_columns(
    g: DiGraph,
    base: dict[tuple[int, int], Scalar],
    rng: np.random.Generator,
    policy: Policy,
    seed: int,
    bound: int,
    retries: int,
) -> Realization:
    for _ in range(retries):
        dbar = _nonzero_ints(rng, g.n, bound)
        entries = {(i, j): x * dbar[j - 1] for (i, j), x in base.items()}
        r = Realization(g, _matrix(g.n, entries), policy=policy.value)
        if is_distance_preserving(r):
            return r
    raise SamplingError(f"no distance-preserving column scaling found after {retries} tries (seed {seed})")


def random_realization(
    g: DiGraph, seed: int, index: int = 0, bound: int = WEIGHT_BOUND, retries: int = RETRY_CAP
) -> Realization:
    """Random integer weights times a random nonzero diagonal, resampled until in Q_d."""
    rng = _rng(seed, index)
    arcs = sorted(g.arcs)
    weights = _nonzero_ints(rng, len(arcs), bound)
    diag = _nonzero_ints(rng, g.n, bound)
    base: dict[tuple[int, int], Scalar] = {(v, u): w for (u, v), w in zip(arcs, weights)}
    base.update({(i, i): d for i, d in zip(g.vertices, diag)})
    return _scale_columns(g, base, rng, Policy.RANDOM, seed, bound, retries)


def sample_qd(g: DiGraph, seed: int = 0, policy: Policy | str = Policy.RANDOM, index: int = 0) -> Realization:
    """A realization in the distance-information preserving class of ``g``."""
    policy = Policy(policy)
    if policy is Policy.ADJACENCY:
        r = adjacency_realization(g)
    elif policy is Policy.LAPLACIAN:
        r = laplacian_realization(g)
    elif policy is Policy.RANDOM:
        return random_realization(g, seed, index)
    else:
        raise ValueError("null-vector realizations need leaders and targets; use null_vector_realization")
    if not is_distance_preserving(r):
        raise SamplingError(f"{policy.value} matrix is not distance-information preserving")
    return r


def null_vector_realization(
    g: DiGraph, leaders: Iterable[int], targets: Iterable[int], seed: int = 0
) -> Realization | None:
    """Build a rank-deficient realization when leaders plus non-targets do not zero-force.

    Let W be the white vertices left by forcing from leaders and non-targets,
    and z the indicator of W.  Weights are chosen so that z^T X = 0: every
    black vertex has zero or at least two white out-neighbours, and the arcs
    into them are weighted to cancel; each white vertex gets a diagonal entry
    cancelling its column.  Since z also kills U and lives on targets, the
    output controllability matrix loses rank.  A random nonzero column scaling
    keeps z^T X = 0 and moves X into Q_d.
    """
    lset = g.check_vertices(leaders)
    tset = g.check_vertices(targets)
    z_set = set(lset) | (set(g.vertices) - set(tset))
    state = derived_set(g, z_set)
    black = set(state.black)
    white = [v for v in g.vertices if v not in black]
    if not white:
        return None
    base: dict[tuple[int, int], Scalar] = {(v, u): 1 for u, v in g.arcs}
    for u in g.vertices:
        whites = [w for w in g.out_neighbors[u] if w not in black]
        if u in black:
            if len(whites) >= 2:
                base[(whites[0], u)] = -(len(whites) - 1)
        else:
            base[(u, u)] = -len(whites)
    rng = _rng(seed, 0)
    r = _scale_columns(g, base, rng, Policy.NULL_VECTOR, seed, WEIGHT_BOUND, RETRY_CAP)
    return r.with_io(lset, tset)


@dataclass
class FalsifyResult:
    witness: Realization | None
    samples: int
    full_rank: int
    attempts: list[str] = field(default_factory=list)


def falsify(g: DiGraph, leaders: Iterable[int], targets: Iterable[int], budget: int = DEFAULT_BUDGET, seed: int = 0) -> FalsifyResult:
    """Search for a distance-preserving realization whose output rank is below p.

    Tries the adjacency matrix, the Laplacian, the null-vector construction
    (only when the necessary condition fails) and then seeded random samples,
    stopping after ``budget`` attempts or at the first witness.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    lset = g.check_vertices(leaders)
    tset = g.check_vertices(targets)

    def candidates() -> Iterable[tuple[str, Realization | None]]:
        yield Policy.ADJACENCY.value, sample_qd(g, seed, Policy.ADJACENCY)
        yield Policy.LAPLACIAN.value, sample_qd(g, seed, Policy.LAPLACIAN)
        if not is_zero_forcing_set(g, set(lset) | (set(g.vertices) - set(tset))):
            yield Policy.NULL_VECTOR.value, null_vector_realization(g, lset, tset, seed)
        index = 0
        while True:
            yield f"{Policy.RANDOM.value}[{index}]", random_realization(g, seed, index)
            index += 1

    result = FalsifyResult(witness=None, samples=0, full_rank=0)
    for label, r in candidates():
        if result.samples >= budget:
            break
        result.samples += 1
        result.attempts.append(label)
        if r is None:
            continue
        r = r.with_io(lset, tset)
        if output_ctrb_rank(r) < r.p:
            result.witness = r
            break
        result.full_rank += 1
    return result


def falsify_strong_tc(
    g: DiGraph, leaders: Iterable[int], targets: Iterable[int], budget: int = DEFAULT_BUDGET, seed: int = 0
) -> Realization | None:
    return falsify(g, leaders, targets, budget, seed).witness


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: dict[str, Any]
    samples: int = 0
    seed: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"status": self.status.value, "certificate": self.certificate, "samples": self.samples, "seed": self.seed}


def _pairs(forces: Sequence[tuple[int, int]]) -> list[list[int]]:
    return [[u, v] for u, v in forces]


def check_sufficient(g: DiGraph, leaders: Iterable[int], targets: Iterable[int]) -> Verdict:
    lset = g.check_vertices(leaders)
    tset = g.check_vertices(targets)
    if not lset or not tset:
        raise ValueError("leaders and targets must be nonempty")
    state = derived_set(g, lset)
    part = partition_targets(g, state.black, tset)
    base = {
        "derived_set": list(state.black),
        "derived_forces": _pairs(state.forces),
        "targets_in_derived": sorted(set(tset) & set(state.black)),
    }
    if part.unreachable:
        return Verdict(Status.NEGATIVE, {"kind": "unreachable_targets", "targets": list(part.unreachable), **base})
    layers = []
    for i in range(1, part.d + 1):
        b = build_layer_graph(g, state.black, part.layer(i), i)
        ok, v = bipartite_forces_all(b)
        if not ok:
            cert = {"kind": "layer_not_forced", "layer": i, "vertex": v, "vertices": list(b.right), **base}
            return Verdict(Status.UNKNOWN, cert)
        forces = run_forcing(b.out_neighbors(), b.left).forces
        layers.append({"layer": i, "vertices": list(b.right), "arcs": [list(a) for a in b.sorted_arcs()], "forces": _pairs(forces)})
    return Verdict(Status.POSITIVE, {"kind": "sufficient_condition", "layers": layers, **base})


def check_necessary(g: DiGraph, leaders: Iterable[int], targets: Iterable[int]) -> Verdict:
    lset = g.check_vertices(leaders)
    tset = g.check_vertices(targets)
    forcing_set = vertex_set(set(lset) | (set(g.vertices) - set(tset)))
    state = derived_set(g, forcing_set)
    if len(state.black) < g.n:
        white = [v for v in g.vertices if v not in set(state.black)]
        cert = {"kind": "necessary_condition_failed", "forcing_set": list(forcing_set), "derived_set": list(state.black), "white": white}
        return Verdict(Status.NEGATIVE, cert)
    cert = {"kind": "necessary_condition_holds", "forcing_set": list(forcing_set), "forces": _pairs(state.forces)}
    return Verdict(Status.UNKNOWN, cert)


def combined_verdict(
    g: DiGraph, leaders: Iterable[int], targets: Iterable[int], budget: int = DEFAULT_BUDGET, seed: int = 0
) -> Verdict:
    sufficient = check_sufficient(g, leaders, targets)
    if sufficient.status is not Status.UNKNOWN:
        return replace(sufficient, seed=seed)
    necessary = check_necessary(g, leaders, targets)
    search = falsify(g, leaders, targets, budget, seed)
    if search.witness is not None:
        r = search.witness
        cert = {
            "kind": "rank_deficient_realization",
            "rank": output_ctrb_rank(r),
            "p": r.p,
            "attempt": search.attempts[-1],
            "realization": r.to_dict(),
            "necessary": necessary.certificate,
        }
        return Verdict(Status.NEGATIVE, cert, samples=search.samples, seed=seed)
    if necessary.status is Status.NEGATIVE:
        return Verdict(Status.NEGATIVE, necessary.certificate, samples=search.samples, seed=seed)
    cert = {
        "kind": "inconclusive",
        "full_rank_samples": search.full_rank,
        "sufficient": sufficient.certificate,
        "necessary": necessary.certificate,
    }
    return Verdict(Status.UNKNOWN, cert, samples=search.samples, seed=seed)
