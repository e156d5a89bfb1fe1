"""Linear layouts: data model, verifiers and pattern analysis."""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .graph import Edge, Graph, VertexOrder, is_path_graph, norm_edge, path_vertex_sequence, positions
from .products import ProductGraph

STACK = "stack"
QUEUE = "queue"
DISPERSABLE = "dispersable"
SIMULTANEOUS = "simultaneous"
DISCIPLINES = (STACK, QUEUE, DISPERSABLE)

Pages = tuple[tuple[Edge, ...], ...]


def _norm_pages(pages: Iterable[Iterable[Sequence[int]]]) -> Pages:
    return tuple(tuple(sorted(norm_edge(int(u), int(v)) for u, v in page)) for page in pages)


@dataclass(frozen=True)
class Layout:
    """A vertex order with an edge partition into pages of one discipline."""

    order: VertexOrder
    pages: Pages
    discipline: str

    def __init__(self, order: Iterable[int], pages: Iterable[Iterable[Sequence[int]]], discipline: str):
        if discipline not in DISCIPLINES:
            raise ValueError(f"unknown discipline {discipline!r}")
        object.__setattr__(self, "order", tuple(int(v) for v in order))
        object.__setattr__(self, "pages", _norm_pages(pages))
        object.__setattr__(self, "discipline", discipline)

    @property
    def num_pages(self) -> int:
        return len(self.pages)

    def page_of(self) -> dict[Edge, int]:
        return {e: i for i, page in enumerate(self.pages) for e in page}

    def edges(self) -> list[Edge]:
        return sorted(e for page in self.pages for e in page)

    def compact(self) -> "Layout":
        """Drop empty pages."""
        return Layout(self.order, [p for p in self.pages if p], self.discipline)

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "discipline": self.discipline,
            "pages": [[list(e) for e in page] for page in self.pages],
        }


@dataclass(frozen=True)
class SimultaneousLayout:
    """One vertex order carrying both a stack partition and a queue partition."""

    order: VertexOrder
    stack_pages: Pages
    queue_pages: Pages

    def __init__(self, order, stack_pages, queue_pages):
        object.__setattr__(self, "order", tuple(int(v) for v in order))
        object.__setattr__(self, "stack_pages", _norm_pages(stack_pages))
        object.__setattr__(self, "queue_pages", _norm_pages(queue_pages))

    discipline = SIMULTANEOUS

    @property
    def s(self) -> int:
        return len(self.stack_pages)

    @property
    def q(self) -> int:
        return len(self.queue_pages)

    def stack_layout(self) -> Layout:
        return Layout(self.order, self.stack_pages, STACK)

    def queue_layout(self) -> Layout:
        return Layout(self.order, self.queue_pages, QUEUE)

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "discipline": SIMULTANEOUS,
            "stack_pages": [[list(e) for e in page] for page in self.stack_pages],
            "queue_pages": [[list(e) for e in page] for page in self.queue_pages],
        }


AnyLayout = Union[Layout, SimultaneousLayout]


def layout_from_json(data: dict) -> AnyLayout:
    try:
        if data.get("discipline") == SIMULTANEOUS:
            return SimultaneousLayout(data["order"], data["stack_pages"], data["queue_pages"])
        return Layout(data["order"], data["pages"], data["discipline"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad layout JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`verify`.

    ``reason`` is one of ``crossing``, ``nesting``, ``not 1-regular`` or
    ``structural``; ``part`` tells stack from queue pages of a simultaneous
    layout.
    """

    valid: bool
    reason: Optional[str] = None
    page: Optional[int] = None
    edges: Optional[tuple[Edge, ...]] = None
    part: Optional[str] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        if self.valid:
            return {"valid": True}
        return {
            "valid": False,
            "reason": self.reason,
            "page": self.page,
            "part": self.part,
            "edges": [list(e) for e in self.edges] if self.edges else None,
            "message": self.message,
        }


VALID = Verdict(True)


def _structural(order: VertexOrder, pages: Pages, graph: Optional[Graph], part: Optional[str]) -> Optional[Verdict]:
    n = graph.n if graph is not None else len(order)
    if sorted(order) != list(range(n)):
        return Verdict(False, "structural", part=part, message=f"order is not a permutation of 0..{n - 1}")
    seen: dict[Edge, int] = {}
    for i, page in enumerate(pages):
        for e in page:
            u, v = e
            if u == v or not (0 <= u < n and 0 <= v < n):
                return Verdict(False, "structural", i, (e,), part, f"{e} is not a vertex pair of the graph")
            if e in seen:
                return Verdict(False, "structural", i, (e,), part, f"{e} appears on pages {seen[e]} and {i}")
            seen[e] = i
    if graph is not None:
        extra = sorted(set(seen) - graph.edge_set())
        if extra:
            e = extra[0]
            return Verdict(False, "structural", seen[e], (e,), part, f"{e} is not an edge of the graph")
        missing = sorted(graph.edge_set() - set(seen))
        if missing:
            return Verdict(False, "structural", None, (missing[0],), part, f"{missing[0]} is on no page")
    return None


def _conflicts(page: Sequence[Edge], pos: Sequence[int], discipline: str) -> Optional[tuple[int, int, str]]:
    """First conflicting pair ``(i, j)`` (lexicographic, ``i < j``) in a sorted page."""
    k = len(page)
    if k < 2:
        return None
    arr = np.asarray(page, dtype=np.int64)
    p = np.asarray(pos, dtype=np.int64)[arr]
    a = p.min(axis=1)
    b = p.max(axis=1)
    ai, aj = a[:, None], a[None, :]
    bi, bj = b[:, None], b[None, :]
    if discipline == QUEUE:
        bad = ((ai < aj) & (bj < bi)) | ((aj < ai) & (bi < bj))
    else:
        bad = ((ai < aj) & (aj < bi) & (bi < bj)) | ((aj < ai) & (ai < bj) & (bj < bi))
        if discipline == DISPERSABLE:
            u, v = arr[:, 0], arr[:, 1]
            shared = (u[:, None] == u[None, :]) | (u[:, None] == v[None, :]) | (v[:, None] == u[None, :]) | (
                v[:, None] == v[None, :]
            )
            bad = bad | shared
    bad = np.triu(bad, k=1)
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None
    i, j = (int(x) for x in hits[0])
    if discipline == QUEUE:
        reason = "nesting"
    elif discipline == DISPERSABLE and set(page[i]) & set(page[j]):
        reason = "not 1-regular"
    else:
        reason = "crossing"
    return i, j, reason


def _check_pages(order: VertexOrder, pages: Pages, discipline: str, part: Optional[str]) -> Verdict:
    pos = positions(order)
    for idx, page in enumerate(pages):
        hit = _conflicts(page, pos, discipline)
        if hit is not None:
            i, j, reason = hit
            pair = (page[i], page[j])
            return Verdict(False, reason, idx, pair, part, f"edges {pair[0]} and {pair[1]} on page {idx}: {reason}")
    return VALID


def verify(layout: AnyLayout, graph: Optional[Graph] = None) -> Verdict:
    """Check a layout against its discipline.

    Without ``graph`` the edge set is taken to be the union of the pages and
    only disjointness is checked structurally. Violations are reported in
    scan order: structure first, then pages ascending and, within a page,
    edge pairs in lexicographic order of the sorted page.
    """
    if isinstance(layout, SimultaneousLayout):
        for part, pages in (("stack", layout.stack_pages), ("queue", layout.queue_pages)):
            bad = _structural(layout.order, pages, graph, part)
            if bad is not None:
                return bad
        if graph is None:
            s_edges = {e for p in layout.stack_pages for e in p}
            q_edges = {e for p in layout.queue_pages for e in p}
            if s_edges != q_edges:
                e = min(s_edges ^ q_edges)
                return Verdict(False, "structural", None, (e,), None, f"{e} is not in both partitions")
        verdict = _check_pages(layout.order, layout.stack_pages, STACK, "stack")
        if not verdict:
            return verdict
        return _check_pages(layout.order, layout.queue_pages, QUEUE, "queue")
    bad = _structural(layout.order, layout.pages, graph, None)
    if bad is not None:
        return bad
    return _check_pages(layout.order, layout.pages, layout.discipline, None)


def is_simultaneous_11(graph: Graph, order: VertexOrder) -> Optional[tuple[Edge, Edge, str]]:
    """``None`` if all edges form one stack and one queue under ``order``,
    else a crossing or nesting pair."""
    pos = positions(order)
    page = graph.edges
    for discipline in (STACK, QUEUE):
        hit = _conflicts(page, pos, discipline)
        if hit is not None:
            i, j, reason = hit
            return page[i], page[j], reason
    return None


# ---------------------------------------------------------------------------
# rainbows and twists


@dataclass(frozen=True)
class PatternWitness:
    """``size`` independent edges forming a rainbow or a twist.

    Rainbow edges are listed outermost first, twist edges by left endpoint.
    """

    size: int
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class ExtremalPatterns:
    max_rainbow: PatternWitness
    max_twist: PatternWitness


def longest_increasing(values: Sequence) -> list[int]:
    """Indices of a longest strictly increasing subsequence (patience sorting)."""
    tails: list = []
    tail_idx: list[int] = []
    prev = [-1] * len(values)
    for i, x in enumerate(values):
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
            tail_idx.append(i)
        else:
            tails[k] = x
            tail_idx[k] = i
        prev[i] = tail_idx[k - 1] if k else -1
    out = []
    i = tail_idx[-1] if tail_idx else -1
    while i != -1:
        out.append(i)
        i = prev[i]
    return out[::-1]


def _spans(edges: Iterable[Edge], pos: Sequence[int]) -> list[tuple[int, int, Edge]]:
    out = []
    for e in edges:
        a, b = pos[e[0]], pos[e[1]]
        out.append((a, b, e) if a < b else (b, a, e))
    return out


def max_rainbow(edges: Iterable[Edge], order: VertexOrder) -> PatternWitness:
    pos = positions(order)
    spans = sorted(_spans(edges, pos), key=lambda t: (t[0], t[1]))
    # strictly decreasing right ends with strictly increasing left ends
    idx = longest_increasing([-b for _, b, _ in spans])
    chain = tuple(spans[i][2] for i in idx)
    return PatternWitness(len(chain), chain)


def max_twist(edges: Iterable[Edge], order: VertexOrder) -> PatternWitness:
    pos = positions(order)
    spans = sorted(_spans(edges, pos), key=lambda t: (t[0], -t[1]))
    best: tuple[Edge, ...] = ()
    # every twist has all left ends before a cut point t and all right ends at or after it
    for t in sorted({b for _, b, _ in spans}):
        live = [s for s in spans if s[0] < t <= s[1]]
        if len(live) <= len(best):
            continue
        idx = longest_increasing([b for _, b, _ in live])
        if len(idx) > len(best):
            best = tuple(live[i][2] for i in idx)
    return PatternWitness(len(best), best)


def extremal_patterns(g: Graph, order: VertexOrder) -> ExtremalPatterns:
    """Maximum rainbow and maximum twist of ``g`` under ``order``, with witnesses."""
    return ExtremalPatterns(max_rainbow(g.edges, order), max_twist(g.edges, order))


def nesting_depths(edges: Sequence[Edge], order: VertexOrder) -> dict[Edge, int]:
    """For each edge, the length of the longest chain of edges nesting over it."""
    pos = positions(order)
    spans = sorted(_spans(edges, pos), key=lambda t: (t[0], t[1]))
    tails: list[int] = []
    depth = {}
    for a, b, e in spans:
        k = bisect_left(tails, -b)
        if k == len(tails):
            tails.append(-b)
        else:
            tails[k] = -b
        depth[e] = k
    return depth


def queues_from_order(g: Graph, order: VertexOrder) -> Layout:
    """Queue layout whose page count equals the largest rainbow of ``order``."""
    depth = nesting_depths(g.edges, order)
    pages: list[list[Edge]] = [[] for _ in range(max(depth.values(), default=-1) + 1)]
    for e, k in depth.items():
        pages[k].append(e)
    return Layout(order, pages, QUEUE)


# ---------------------------------------------------------------------------
# Erdos-Szekeres


@dataclass(frozen=True)
class MonotoneSubsequence:
    kind: str  # "increasing" or "decreasing"
    values: tuple
    indices: tuple[int, ...]


def erdos_szekeres(seq: Sequence, a: int, b: int) -> MonotoneSubsequence:
    """An increasing subsequence of length > ``a`` or a decreasing one of length > ``b``.

    Requires ``len(seq) >= a*b + 1`` distinct entries. When both exist the
    longer is returned (increasing on ties). The full longest monotone
    subsequence is returned, not a truncation.
    """
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    if len(seq) < a * b + 1:
        raise ValueError(f"sequence of length {len(seq)} is shorter than a*b+1 = {a * b + 1}")
    if len(set(seq)) != len(seq):
        raise ValueError("sequence entries must be distinct")
    inc = longest_increasing(seq)
    dec = longest_increasing([-x for x in seq])
    inc_ok, dec_ok = len(inc) >= a + 1, len(dec) >= b + 1
    if inc_ok and (not dec_ok or len(inc) >= len(dec)):
        idx, kind = inc, "increasing"
    elif dec_ok:
        idx, kind = dec, "decreasing"
    else:  # pragma: no cover - cannot happen for length a*b+1
        raise AssertionError("no monotone subsequence of the guaranteed length")
    return MonotoneSubsequence(kind, tuple(seq[i] for i in idx), tuple(idx))


# ---------------------------------------------------------------------------
# density bound


def density_lower_bound(g: Graph) -> int:
    """Lower bound on the stack number from the edge count.

    A k-stack layout of an n-vertex graph (n >= 4) has at most
    ``k(n-3) + n`` edges.
    """
    n, m = g.n, g.m
    if n < 4:
        raise ValueError("density bound needs at least 4 vertices")
    return max(math.ceil((m - n) / (n - 3)), 1 if m else 0)


# ---------------------------------------------------------------------------
# separated layouts


@dataclass(frozen=True)
class Separation:
    """Result of :func:`is_separated`.

    ``copies`` are the factor-A vertices of the separated pair, earlier copy
    first. When not separated, ``interleaving`` holds two ordered vertex
    pairs ``(p, q)`` from the first consecutive copies: in the first pair
    a vertex of the second copy precedes one of the first copy, in the second
    pair the reverse. Together they show that neither copy precedes the other.
    """

    separated: bool
    copies: Optional[tuple[int, int]] = None
    interleaving: Optional[tuple[tuple[int, int], tuple[int, int]]] = None


def is_separated(pg: ProductGraph, layout: Union[AnyLayout, VertexOrder]) -> Separation:
    """Whether two consecutive copies of ``factor_b`` occupy ordered disjoint intervals."""
    order = layout if isinstance(layout, tuple) else layout.order
    if not is_path_graph(pg.factor_a):
        raise ValueError("is_separated needs a product whose first factor is a path")
    pos = positions(order)
    seq = path_vertex_sequence(pg.factor_a)
    span = {}
    for c in seq:
        ps = [pos[v] for v in pg.copy_vertices(c)]
        span[c] = (min(ps), max(ps))
    for c1, c2 in zip(seq, seq[1:]):
        if span[c1][1] < span[c2][0]:
            return Separation(True, (c1, c2))
        if span[c2][1] < span[c1][0]:
            return Separation(True, (c2, c1))
    if len(seq) < 2:
        return Separation(False)
    c1, c2 = seq[0], seq[1]
    first, second = order[span[c2][0]], order[span[c1][1]]
    third, fourth = order[span[c1][0]], order[span[c2][1]]
    return Separation(False, None, ((first, second), (third, fourth)))
