"""Constructive layouts of graphs and of their products."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .decompositions import InconsistencyError, PreconditionError, vertex_separation
from .graph import WHITE, Edge, Graph, VertexOrder, bipartition, check_order, norm_edge, path, positions
from .layouts import (
    DISPERSABLE,
    STACK,
    Layout,
    PatternWitness,
    SimultaneousLayout,
    erdos_szekeres,
    is_separated,
    longest_increasing,
    max_rainbow,
    queues_from_order,
    verify,
)
from .products import A_EDGE, B_EDGE, ProductGraph, product


def simultaneous_from_order(g: Graph, order: VertexOrder, p: Optional[int] = None) -> SimultaneousLayout:
    """Simultaneous p-stack p-queue layout from an order whose vertex cuts are at most ``p``.

    Queues come from nesting depth. For stacks, the forward edges of each
    vertex go together onto the lowest stack not used by the forward edges
    of the other vertices in the next cut; only those edges can cross them.
    """
    order = check_order(order, g.n)
    sep = vertex_separation(g, order)
    if p is None:
        p = sep.max_cut
    if sep.max_cut > p:
        worst = max(range(g.n), key=lambda j: len(sep.profile.cuts[j]))
        raise PreconditionError(
            f"vertex separation of the order is {sep.max_cut} > p={p}",
            sep.profile.cuts[worst],
        )
    pos = positions(order)
    forward: list[list[Edge]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        first = u if pos[u] < pos[v] else v
        forward[first].append((u, v))
    stack_of: dict[int, int] = {}
    for i, v in enumerate(order):
        if not forward[v]:
            continue
        cut = sep.profile.cuts[i + 1]
        used = {stack_of[z] for z in cut if z != v}
        k = 0
        while k in used:
            k += 1
        if k >= max(p, 1):
            raise InconsistencyError(f"no free stack for forward edges of {v}")
        stack_of[v] = k
    stacks: list[list[Edge]] = [[] for _ in range(max(stack_of.values(), default=-1) + 1)]
    for v, k in stack_of.items():
        stacks[k].extend(forward[v])
    queues = queues_from_order(g, order)
    return SimultaneousLayout(order, stacks, queues.pages)


# ---------------------------------------------------------------------------
# products


def product_order(pi: VertexOrder, sigma: VertexOrder, colors: Sequence[int]) -> VertexOrder:
    """Order of ``H x G``: ``pi`` with each white vertex replaced by ``sigma``
    and each black vertex by the reverse of ``sigma``."""
    nb = len(sigma)
    rev = tuple(reversed(sigma))
    out: list[int] = []
    for v in pi:
        block = sigma if colors[v] == WHITE else rev
        out.extend(v * nb + x for x in block)
    return tuple(out)


def product_page_bounds(s: int, q: int, dsn: int) -> dict[str, int]:
    """Page bounds for the three products of a bipartite H and a graph G."""
    return {"cartesian": s + dsn, "direct": 2 * q * dsn, "strong": 2 * q * dsn + s + dsn}


def product_stack_layout(
    h: Graph, h_disp: Layout, g: Graph, g_sim: SimultaneousLayout, kind: str
) -> tuple[ProductGraph, Layout]:
    """Stack layout of ``h (kind) g`` from a dispersable layout of a bipartite
    ``h`` and a simultaneous layout of ``g``.

    Pages are grouped as: ``s`` pages for edges inside copies of ``g``, one
    page per dispersable page of ``h`` for the edges between copies, and
    ``2*q`` pages per dispersable page for direct edges, split by the queue
    of the underlying ``g`` edge and by whether the ``g`` endpoints appear
    in ``sigma`` order or reversed. Empty pages are dropped.
    """
    colors = bipartition(h)
    if colors is None:
        raise PreconditionError("H must be bipartite")
    if h_disp.discipline != DISPERSABLE:
        raise PreconditionError("H layout must be dispersable")
    verdict = verify(h_disp, h)
    if not verdict:
        raise PreconditionError(f"H layout is invalid: {verdict.message}", verdict)
    verdict = verify(g_sim, g)
    if not verdict:
        raise PreconditionError(f"G layout is invalid: {verdict.message}", verdict)

    pg = product(h, g, kind)
    pi, sigma = h_disp.order, g_sim.order
    phi = product_order(pi, sigma, colors)
    pos_phi = positions(phi)
    pos_sigma = positions(sigma)
    s, dsn = g_sim.s, h_disp.num_pages
    h_page = h_disp.page_of()
    g_stack = {e: i for i, page in enumerate(g_sim.stack_pages) for e in page}
    g_queue = {e: i for i, page in enumerate(g_sim.queue_pages) for e in page}

    n_direct = 2 * g_sim.q * dsn
    pages: list[list[Edge]] = [[] for _ in range(s + dsn + n_direct)]
    for e in pg.graph.edges:
        cls = pg.edge_class[e]
        left, right = sorted(e, key=pos_phi.__getitem__)
        (v, x), (u, y) = pg.vertex_of(left), pg.vertex_of(right)
        if cls == A_EDGE:
            page = g_stack[norm_edge(x, y)]
        elif cls == B_EDGE:
            page = s + h_page[norm_edge(v, u)]
        else:
            j = h_page[norm_edge(v, u)]
            i = g_queue[norm_edge(x, y)]
            flipped = 0 if pos_sigma[x] < pos_sigma[y] else 1
            page = s + dsn + i * 2 * dsn + 2 * j + flipped
        pages[page].append(e)
    return pg, Layout(phi, pages, STACK).compact()


# ---------------------------------------------------------------------------
# dispersable layouts


def bipartite_edge_coloring(edges: Sequence[Edge]) -> dict[Edge, int]:
    """Proper edge coloring of a bipartite graph with max-degree colors.

    Each edge takes a color free at both ends, after swapping two colors
    along an alternating path when the free colors differ. In a bipartite
    graph that path never returns to the edge's other endpoint.
    """
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    delta = max(deg.values(), default=0)
    at: dict[int, dict[int, int]] = {v: {} for v in deg}  # vertex -> color -> neighbour

    def free(v: int) -> int:
        return next(c for c in range(delta) if c not in at[v])

    for u, v in edges:
        a, b = free(u), free(v)
        if a not in at[v]:
            c = a
        else:
            # swap a and b along the a/b path starting at v
            path_edges = []
            x, col = v, a
            while col in at[x]:
                y = at[x][col]
                path_edges.append((x, y, col))
                x, col = y, (b if col == a else a)
            if x == u:
                raise InconsistencyError("alternating path closed an odd cycle; graph is not bipartite")
            for x, y, col in path_edges:
                del at[x][col]
                del at[y][col]
            for x, y, col in path_edges:
                other = b if col == a else a
                at[x][other] = y
                at[y][other] = x
            c = a
        at[u][c] = v
        at[v][c] = u
    colors = {}
    for x, table in at.items():
        for c, y in table.items():
            colors[norm_edge(x, y)] = c
    return colors


def dispersable_from_stack(g: Graph, stacks: Layout) -> Layout:
    """Split each stack of a bipartite graph into at most max-degree matchings."""
    if bipartition(g) is None:
        raise PreconditionError("graph must be bipartite")
    verdict = verify(stacks, g)
    if not verdict or stacks.discipline not in (STACK, DISPERSABLE):
        raise PreconditionError(f"input is not a valid stack layout: {verdict.message}", verdict)
    pages: list[list[Edge]] = []
    for page in stacks.pages:
        colors = bipartite_edge_coloring(page)
        sub: list[list[Edge]] = [[] for _ in range(max(colors.values(), default=-1) + 1)]
        for e in page:
            sub[colors[e]].append(e)
        pages.extend(sub)
    return Layout(stacks.order, pages, DISPERSABLE).compact()


def dispersable_path(n: int) -> Layout:
    """Two-page dispersable layout of the path in natural order (one page for n = 2)."""
    if n < 2:
        raise ValueError("dispersable_path needs n >= 2")
    pages: list[list[Edge]] = [[], []]
    for i in range(n - 1):
        pages[i % 2].append((i, i + 1))
    return Layout(range(n), pages, DISPERSABLE).compact()


# ---------------------------------------------------------------------------
# grids


def grid_4stack(n: int, m: int) -> tuple[ProductGraph, Layout]:
    """Four-stack layout of the strong product of two paths.

    Copies of ``P_m`` follow the path ``P_n`` with alternating direction.
    Between two consecutive copies the only crossings are the two diagonals
    of a unit square, so one diagonal direction shares a page with the
    straight inter-copy edges and the other gets its own page; consecutive
    copy pairs alternate between pages {0, 1} and {2, 3}. Edges inside a copy
    join adjacent positions, cross nothing, and go on page 0.
    """
    if n < 2 or m < 2:
        raise ValueError("grid_4stack needs n, m >= 2")
    pn, pm = path(n), path(m)
    pg = product(pn, pm, "strong")
    colors = bipartition(pn)
    phi = product_order(tuple(range(n)), tuple(range(m)), colors)
    pages: list[list[Edge]] = [[] for _ in range(4)]
    for e in pg.graph.edges:
        (v, x), (u, y) = pg.vertex_of(e[0]), pg.vertex_of(e[1])
        if v == u:
            pages[0].append(e)
            continue
        lower = min(v, u)
        x_low = x if v == lower else y
        y_high = y if v == lower else x
        diagonal_down = y_high < x_low
        pages[2 * (lower % 2) + int(diagonal_down)].append(e)
    return pg, Layout(phi, pages, STACK).compact()


# ---------------------------------------------------------------------------
# separated layouts


class RainbowBoundError(InconsistencyError):
    """A separated stack layout produced a rainbow larger than ``s**2``.

    ``twist`` is a twist of more than ``s`` edges inside the product layout,
    which shows the input was not a valid ``s``-stack layout.
    """

    def __init__(self, message: str, twist: PatternWitness, rainbow: PatternWitness):
        super().__init__(message)
        self.twist = twist
        self.rainbow = rainbow


@dataclass(frozen=True)
class RainbowExtraction:
    """Outcome of :func:`extract_rainbow`: ``rainbow`` edges nest, outermost first."""

    rainbow: tuple[Edge, ...]
    twist: Optional[tuple[Edge, ...]] = None


def extract_rainbow(edges: Sequence[Edge], order: VertexOrder, s: int) -> RainbowExtraction:
    """Nested subset of at least ``ceil(n/s)`` of ``n`` independent edges.

    All left endpoints must precede all right endpoints. The right endpoints,
    read in order, permute the left ones; an increasing run is a twist, so
    in an ``s``-stack layout every increasing run has at most ``s`` edges and
    a long decreasing run, which is a rainbow, must exist. If an increasing
    run longer than ``s`` is found instead it is returned as ``twist``.
    """
    if s < 1:
        raise ValueError("s must be positive")
    pos = positions(order)
    spans = sorted(((min(pos[u], pos[v]), max(pos[u], pos[v]), norm_edge(u, v)) for u, v in edges))
    if not spans:
        return RainbowExtraction(())
    if len({x for a, b, _ in spans for x in (a, b)}) != 2 * len(spans):
        raise ValueError("edges must be independent")
    if spans[-1][0] > min(b for _, b, _ in spans):
        raise ValueError("every left endpoint must precede every right endpoint")
    n = len(spans)
    rights = [b for _, b, _ in spans]
    found = erdos_szekeres(rights, s, math.ceil(n / s) - 1)
    chosen = tuple(spans[i][2] for i in found.indices)
    if found.kind == "increasing" and len(chosen) > s:
        rainbow = tuple(spans[i][2] for i in longest_increasing([-b for b in rights]))
        return RainbowExtraction(rainbow, chosen)
    return RainbowExtraction(chosen)


def simultaneous_from_separated(pg: ProductGraph, layout: Layout, check: bool = True) -> SimultaneousLayout:
    """Simultaneous ``s``-stack ``s**2``-queue layout of the second factor of
    a separated ``s``-stack layout of ``P_n (strong) G``.

    The first of the two separated copies gives the order and the stacks;
    the queues come from nesting depth, which cannot exceed ``s**2``.
    """
    if pg.kind != "strong":
        raise PreconditionError("expected a strong product")
    if check:
        verdict = verify(layout, pg.graph)
        if not verdict or layout.discipline not in (STACK, DISPERSABLE):
            raise PreconditionError(f"input is not a valid stack layout: {verdict.message}", verdict)
    sep = is_separated(pg, layout)
    if not sep.separated:
        raise PreconditionError("layout is not separated", sep.interleaving)
    c1, c2 = sep.copies
    g = pg.factor_b
    s = layout.num_pages
    in_c1 = set(pg.copy_vertices(c1))
    sigma1 = tuple(pg.vertex_of(v)[1] for v in layout.order if v in in_c1)
    stacks: list[list[Edge]] = []
    for page in layout.pages:
        sub = [norm_edge(pg.vertex_of(u)[1], pg.vertex_of(v)[1]) for u, v in page if u in in_c1 and v in in_c1]
        if sub:
            stacks.append(sub)
    rainbow = max_rainbow(g.edges, sigma1)
    if rainbow.size > s * s:
        raise _rainbow_contradiction(pg, layout, c1, c2, rainbow, s)
    queues = queues_from_order(g, sigma1)
    return SimultaneousLayout(sigma1, stacks, queues.pages)


def _rainbow_contradiction(
    pg: ProductGraph, layout: Layout, c1: int, c2: int, rainbow: PatternWitness, s: int
) -> RainbowBoundError:
    """Turn a rainbow larger than ``s**2`` in the first copy into a twist of more than ``s`` edges."""
    sigma_pos = positions(tuple(pg.vertex_of(v)[1] for v in layout.order if pg.vertex_of(v)[0] == c1))
    outer = []  # (u_i, v_i) in G with u_i left of v_i
    for x, y in rainbow.edges:
        outer.append((x, y) if sigma_pos[x] < sigma_pos[y] else (y, x))
    links = [(pg.index_of(c1, u), pg.index_of(c2, u)) for u, _ in outer]
    got = extract_rainbow(links, layout.order, s)
    if got.twist is not None:
        twist = got.twist
    else:
        chosen_u = [pg.vertex_of(min(e, key=positions(layout.order).__getitem__))[1] for e in got.rainbow]
        v_of = dict(outer)
        twist = tuple(norm_edge(pg.index_of(c1, v_of[u]), pg.index_of(c2, u)) for u in chosen_u)
    return RainbowBoundError(
        f"rainbow of {rainbow.size} > s^2 = {s * s} edges; twist of {len(twist)} > s = {s} edges in the input",
        PatternWitness(len(twist), twist),
        rainbow,
    )
