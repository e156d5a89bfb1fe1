"""Path decompositions, vertex cuts and the layout-to-decomposition constructions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Edge, Graph, VertexOrder, check_order, positions
from .layouts import SimultaneousLayout, is_simultaneous_11, verify


class PreconditionError(ValueError):
    """Input does not satisfy a construction's hypothesis.

    ``witness`` carries the offending structure (an edge pair, a cut, ...).
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InconsistencyError(RuntimeError):
    """A proof step that must hold for valid input did not."""


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __init__(self, bags: Iterable[Iterable[int]]):
        object.__setattr__(self, "bags", tuple(frozenset(int(v) for v in b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags]}

    @classmethod
    def from_json(cls, data: dict) -> "PathDecomposition":
        return cls(data["bags"])


@dataclass(frozen=True)
class PDVerdict:
    valid: bool
    width: Optional[int] = None
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


def verify_path_decomposition(g: Graph, pd: PathDecomposition) -> PDVerdict:
    """Check edge coverage and that each vertex occupies a contiguous, non-empty run of bags."""
    for i, bag in enumerate(pd.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return PDVerdict(False, violation=f"bag {i} holds {v}, not a vertex of the graph")
    where: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            where[v].append(i)
    for v in range(g.n):
        idx = where[v]
        if not idx:
            return PDVerdict(False, violation=f"vertex {v} is in no bag")
        if idx[-1] - idx[0] + 1 != len(idx):
            return PDVerdict(False, violation=f"vertex {v} not contiguous: bags {idx}")
    for u, v in g.edges:
        lo = max(where[u][0], where[v][0])
        hi = min(where[u][-1], where[v][-1])
        if lo > hi:
            return PDVerdict(False, violation=f"edge ({u}, {v}) uncovered")
    return PDVerdict(True, pd.width)


@dataclass(frozen=True)
class CutProfile:
    """``cuts[i]`` is the vertex cut at the vertex in position ``i``."""

    order: VertexOrder
    cuts: tuple[frozenset[int], ...]

    def at(self, v: int) -> frozenset[int]:
        return self.cuts[positions(self.order)[v]]


@dataclass(frozen=True)
class Separation:
    max_cut: int
    profile: CutProfile


def vertex_separation(g: Graph, order: VertexOrder) -> Separation:
    """Exact vertex-cut profile: ``C(v) = {x < v : x has a neighbour y >= v}``."""
    order = check_order(order, g.n)
    pos = positions(order)
    last = list(pos)  # farthest neighbour position, or own position
    for u, v in g.edges:
        last[u] = max(last[u], pos[v])
        last[v] = max(last[v], pos[u])
    cuts = []
    for j in range(g.n):
        cuts.append(frozenset(order[i] for i in range(j) if last[order[i]] >= j))
    return Separation(max((len(c) for c in cuts), default=0), CutProfile(order, tuple(cuts)))


def pd_from_11_layout(g: Graph, order: VertexOrder) -> PathDecomposition:
    """Width-2 path decomposition from a simultaneous 1-stack 1-queue order.

    Bag ``x`` contains the ``x``-th vertex of ``order`` and at most two more.
    Peels the last vertex ``v_k`` of the current prefix: if it is isolated
    the prefix shrinks by one, otherwise the prefix is cut back to its
    smallest neighbour ``v_i`` and the run ``v_i+1 .. v_k`` gets bags pairing
    each vertex with ``v_i`` or ``v_k``.
    """
    order = check_order(order, g.n)
    bad = is_simultaneous_11(g, order)
    if bad is not None:
        e, f, reason = bad
        raise PreconditionError(f"order is not simultaneous 1-stack 1-queue: {e} and {f} ({reason})", (e, f, reason))
    pos = positions(order)
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(pos[v])
        adj[v].add(pos[u])
    # all vertices are addressed by position below
    nbrs = [adj[order[x]] for x in range(g.n)]

    tail: list[list[list[int]]] = []
    k = g.n - 1
    while k >= 0:
        earlier = [y for y in nbrs[k] if y < k]
        if not earlier:
            tail.append([[k]])
            k -= 1
            continue
        i = min(earlier)
        for x in range(i + 1, k):
            if not nbrs[x] <= {i, k}:
                raise InconsistencyError(
                    f"vertex {order[x]} between {order[i]} and {order[k]} has a neighbour outside both"
                )
        if len(earlier) == 1:
            ext = [[i, x] for x in range(i + 1, k + 1)]
        else:
            h = min(y for y in earlier if y > i)
            ext = [[i, x] for x in range(i + 1, h)]
            ext.append([i, h, k])
            ext.extend([x, k] for x in range(h + 1, k))
            ext.append([k])
        tail.append(ext)
        k = i
    bags = [[order[x] for x in bag] for ext in reversed(tail) for bag in ext]
    pd = PathDecomposition(bags)
    verdict = verify_path_decomposition(g, pd)
    if not verdict or len(pd.bags) != g.n:
        raise InconsistencyError(f"constructed decomposition is invalid: {verdict.violation}")
    return pd


def pd_from_simultaneous(g: Graph, sim: SimultaneousLayout) -> PathDecomposition:
    """Path decomposition of width at most ``2*s*q`` from a simultaneous layout.

    Edges are split by (stack, queue) pair; each part is a 1-stack 1-queue
    layout under the shared order and is decomposed separately, then bag
    ``x`` of the result is the union of the parts' bags ``x``.
    """
    verdict = verify(sim, g)
    if not verdict:
        raise PreconditionError(f"simultaneous layout is invalid: {verdict.message}", verdict)
    queue_of = {e: j for j, page in enumerate(sim.queue_pages) for e in page}
    parts: dict[tuple[int, int], list[Edge]] = {}
    for i, page in enumerate(sim.stack_pages):
        for e in page:
            parts.setdefault((i, queue_of[e]), []).append(e)
    bags = [{v} for v in sim.order]
    for key in sorted(parts):
        sub = pd_from_11_layout(g.subgraph(parts[key]), sim.order)
        for x, bag in enumerate(sub.bags):
            bags[x] |= bag
    pd = PathDecomposition(bags)
    check = verify_path_decomposition(g, pd)
    if not check:
        raise InconsistencyError(f"merged decomposition is invalid: {check.violation}")
    return pd
