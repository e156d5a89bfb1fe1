"""Cartesian, direct and strong products with vertex and edge provenance."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Edge, Graph, norm_edge

KINDS = ("cartesian", "direct", "strong")

A_EDGE = "A"  # same factor-A vertex, edge of B: an edge inside one copy of B
B_EDGE = "B"  # same factor-B vertex, edge of A: joins two copies of B
DIRECT_EDGE = "direct"
EDGE_CLASSES = (A_EDGE, B_EDGE, DIRECT_EDGE)


@dataclass(frozen=True)
class ProductGraph:
    """A product ``factor_a (kind) factor_b``.

    Vertex ``(a, b)`` has index ``a * |V(B)| + b``, so the copy of ``factor_b``
    belonging to a fixed ``a`` is a contiguous block of indices.
    """

    graph: Graph
    factor_a: Graph
    factor_b: Graph
    kind: str
    edge_class: dict[Edge, str] = field(compare=False, repr=False)

    def vertex_of(self, index: int) -> tuple[int, int]:
        return divmod(index, self.factor_b.n)

    def index_of(self, a: int, b: int) -> int:
        return a * self.factor_b.n + b

    def copy_vertices(self, a: int) -> list[int]:
        """Product vertices of the copy of ``factor_b`` at factor-A vertex ``a``."""
        base = a * self.factor_b.n
        return list(range(base, base + self.factor_b.n))

    def edges_of_class(self, cls: str) -> list[Edge]:
        return [e for e in self.graph.edges if self.edge_class[e] == cls]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "factor_a": self.factor_a.to_json(),
            "factor_b": self.factor_b.to_json(),
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "vertex_of": [list(self.vertex_of(i)) for i in range(self.graph.n)],
            "edge_class": [[u, v, self.edge_class[(u, v)]] for u, v in self.graph.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProductGraph":
        prod = product(Graph.from_json(data["factor_a"]), Graph.from_json(data["factor_b"]), data["kind"])
        if "edges" in data and {tuple(e) for e in data["edges"]} != set(prod.graph.edges):
            raise ValueError("product JSON edges disagree with its factors")
        return prod


def product(a: Graph, b: Graph, kind: str) -> ProductGraph:
    if kind not in KINDS:
        raise ValueError(f"unknown product kind {kind!r}; choose from {', '.join(KINDS)}")
    if a.n == 0 or b.n == 0:
        raise ValueError("product factors must be non-empty")
    nb = b.n

    def idx(x: int, y: int) -> int:
        return x * nb + y

    classes: dict[Edge, str] = {}
    if kind in ("cartesian", "strong"):
        for v in range(a.n):
            for x, y in b.edges:
                classes[norm_edge(idx(v, x), idx(v, y))] = A_EDGE
        for v, u in a.edges:
            for x in range(nb):
                classes[norm_edge(idx(v, x), idx(u, x))] = B_EDGE
    if kind in ("direct", "strong"):
        for v, u in a.edges:
            for x, y in b.edges:
                classes[norm_edge(idx(v, x), idx(u, y))] = DIRECT_EDGE
                classes[norm_edge(idx(v, y), idx(u, x))] = DIRECT_EDGE
    return ProductGraph(Graph(a.n * nb, classes), a, b, kind, classes)


def classify(pg: ProductGraph, e: Edge) -> str:
    """Classify a product edge from the vertex bijection alone."""
    (v, x), (u, y) = pg.vertex_of(e[0]), pg.vertex_of(e[1])
    if v == u and pg.factor_b.has_edge(x, y):
        return A_EDGE
    if x == y and pg.factor_a.has_edge(v, u):
        return B_EDGE
    if v != u and x != y and pg.factor_a.has_edge(v, u) and pg.factor_b.has_edge(x, y):
        return DIRECT_EDGE
    raise ValueError(f"{e} is not an edge of any product of the factors")
