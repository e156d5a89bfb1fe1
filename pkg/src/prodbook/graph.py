"""Simple undirected graphs on dense integer vertices, generators and I/O."""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

Edge = tuple[int, int]
VertexOrder = tuple[int, ...]

WHITE = 0
BLACK = 1


class GraphFormatError(ValueError):
    """Raised for malformed graph text or JSON."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0 .. n-1``.

    Edges are stored normalized as ``(min, max)`` and sorted.
    """

    n: int
    edges: tuple[Edge, ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            seen.add(norm_edge(u, v))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set()

    def subgraph(self, edges: Iterable[Edge]) -> "Graph":
        """Spanning subgraph on the same vertex set."""
        return Graph(self.n, edges)

    def relabel(self, mapping: dict[int, int] | list[int]) -> "Graph":
        return Graph(self.n, ((mapping[u], mapping[v]) for u, v in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            return cls(int(data["n"]), [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"bad graph JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_edge_list(text: str) -> Graph:
    """Parse the line-oriented edge-list format.

    The first non-comment line is ``n=<int>``; every further line is ``u v``.
    ``#`` starts a comment. Semicolons act as line separators so that
    ``"n=3; 0 1; 1 2"`` is accepted as a one-liner.
    """
    n: Optional[int] = None
    edges: list[Edge] = []
    lines = text.replace(";", "\n").splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            key, sep, value = line.partition("=")
            if not sep or key.strip() != "n":
                raise GraphFormatError(f"line {lineno}: expected header 'n=<int>', got {raw!r}")
            try:
                n = int(value)
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex count {value!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative endpoint in {raw!r}")
        if u >= n or v >= n:
            raise GraphFormatError(f"line {lineno}: endpoint >= n={n} in {raw!r}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        edges.append((u, v))
    if n is None:
        raise GraphFormatError("missing header 'n=<int>'")
    return Graph(n, edges)


def graph_to_edge_list(g: Graph) -> str:
    return "\n".join([f"n={g.n}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def load_graph(text: str) -> Graph:
    """Accept either the edge-list format or graph JSON."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return Graph.from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"bad JSON: {exc}") from exc
    return graph_from_edge_list(text)


# ---------------------------------------------------------------------------
# generators


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def caterpillar(spine: int, legs: int) -> Graph:
    """A path of ``spine`` vertices, each with ``legs`` pendant leaves."""
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        for _ in range(legs):
            edges.append((i, nxt))
            nxt += 1
    return Graph(nxt, edges)


def random_pathwidth(p: int, n: int, seed: int) -> tuple[Graph, VertexOrder]:
    """Random graph with a witness order of vertex separation at most ``p``.

    Vertex ``i`` is joined to a random non-empty subset of the ``p``
    vertices immediately before it, so every cut in the identity order
    contains only vertices from that window.
    """
    if p < 1 or n < 1:
        raise ValueError("random_pathwidth needs p >= 1 and n >= 1")
    rng = random.Random(seed)
    edges = []
    for i in range(1, n):
        window = list(range(max(0, i - p), i))
        k = rng.randint(1, len(window))
        edges.extend((j, i) for j in sorted(rng.sample(window, k)))
    return Graph(n, edges), tuple(range(n))


_FAMILIES = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "star": (star, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "caterpillar": (caterpillar, 2),
    "random_pathwidth": (random_pathwidth, 3),
}

FAMILIES = tuple(_FAMILIES)


def generate(family: str, *params: int) -> Graph:
    """Build a graph of a named family.

    ``random_pathwidth`` takes ``(p, n, seed)``; use :func:`random_pathwidth`
    directly to also get its witness order.
    """
    try:
        fn, arity = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} integer parameter(s), got {len(params)}")
    positive = params[:2] if family == "random_pathwidth" else params
    if any(int(x) < 1 for x in positive):
        raise ValueError(f"{family} parameters must be positive, got {params}")
    result = fn(*(int(x) for x in params))
    return result[0] if isinstance(result, tuple) else result


# ---------------------------------------------------------------------------
# structure


def bipartition(g: Graph) -> Optional[tuple[int, ...]]:
    """Deterministic 2-coloring (``WHITE``/``BLACK`` per vertex) or ``None``.

    Components are colored by BFS from their lowest-index vertex, which is
    white.
    """
    adj = g.adjacency()
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = WHITE
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return tuple(color)


def is_path_graph(g: Graph) -> bool:
    if g.n == 0:
        return False
    if g.m != g.n - 1 or g.max_degree() > 2:
        return False
    return _connected(g)


def path_vertex_sequence(g: Graph) -> list[int]:
    """Vertices of a path graph from its lower-index endpoint to the other."""
    if not is_path_graph(g):
        raise ValueError("graph is not a path")
    if g.n == 1:
        return [0]
    adj = g.adjacency()
    start = min(v for v in range(g.n) if len(adj[v]) == 1)
    seq, prev = [start], -1
    while len(seq) < g.n:
        cur = seq[-1]
        nxt = next(w for w in adj[cur] if w != prev)
        prev = cur
        seq.append(nxt)
    return seq


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_connected(g: Graph) -> bool:
    return _connected(g)


def check_order(order: Iterable[int], n: int) -> VertexOrder:
    """Validate that ``order`` is a permutation of ``0..n-1``."""
    order = tuple(int(v) for v in order)
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError(f"order is not a permutation of 0..{n - 1}")
    return order


def positions(order: VertexOrder) -> list[int]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    return pos
