"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package's pattern or verification code, so the
tests compare two independent computations.
"""

from __future__ import annotations

import itertools
from collections import deque

import pytest


def _span(e, pos):
    a, b = pos[e[0]], pos[e[1]]
    return (a, b) if a < b else (b, a)


def independent(e, f):
    return not (set(e) & set(f))


def cross(e, f, pos):
    (a, b), (c, d) = _span(e, pos), _span(f, pos)
    return a < c < b < d or c < a < d < b


def nest(e, f, pos):
    (a, b), (c, d) = _span(e, pos), _span(f, pos)
    return a < c < d < b or c < a < b < d


def pos_of(order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    return pos


def page_ok(page, order, discipline):
    pos = pos_of(order)
    for e, f in itertools.combinations(page, 2):
        if discipline == "queue":
            if independent(e, f) and nest(e, f, pos):
                return False
        else:
            if independent(e, f) and cross(e, f, pos):
                return False
            if discipline == "dispersable" and not independent(e, f):
                return False
    return True


def brute_layout_ok(order, pages, discipline, edges):
    flat = [tuple(sorted(e)) for p in pages for e in p]
    if len(flat) != len(set(flat)) or set(flat) != {tuple(sorted(e)) for e in edges}:
        return False
    return all(page_ok(p, order, discipline) for p in pages)


def brute_max_pattern(edges, order, kind):
    """Largest rainbow or twist by trying every subset, largest first."""
    pos = pos_of(order)
    rel = nest if kind == "rainbow" else cross
    edges = list(edges)
    for k in range(len(edges), 0, -1):
        for sub in itertools.combinations(edges, k):
            if all(independent(e, f) and rel(e, f, pos) for e, f in itertools.combinations(sub, 2)):
                return k
    return 0


def brute_product_edges(na, ea, nb, eb, kind):
    """Edges of a product straight from the adjacency definitions."""
    adj_a = {frozenset(e) for e in ea}
    adj_b = {frozenset(e) for e in eb}
    verts = [(v, x) for v in range(na) for x in range(nb)]
    out = set()
    for (v, x), (u, y) in itertools.combinations(verts, 2):
        a_adj = frozenset((v, u)) in adj_a
        b_adj = frozenset((x, y)) in adj_b
        cart = (v == u and b_adj) or (x == y and a_adj)
        direct = a_adj and b_adj
        if (kind == "cartesian" and cart) or (kind == "direct" and direct) or (kind == "strong" and (cart or direct)):
            i, j = v * nb + x, u * nb + y
            out.add((min(i, j), max(i, j)))
    return out


def brute_pathwidth(n, edges):
    """Pathwidth by BFS over (placed set, bag) states of a nice path decomposition.

    Vertices are introduced and forgotten one at a time; a vertex may only be
    forgotten once all its neighbours have been introduced. The answer is the
    smallest bag bound under which every vertex can be placed and forgotten.
    """
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    full = (1 << n) - 1
    for w in range(n):
        start = (0, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            placed, bag = queue.popleft()
            if placed == full and bag == 0:
                return w
            for v in range(n):
                bit = 1 << v
                if not placed & bit and bin(bag).count("1") < w + 1:
                    st = (placed | bit, bag | bit)
                    if st not in seen:
                        seen.add(st)
                        queue.append(st)
                if bag & bit and all(placed >> y & 1 for y in nbrs[v]):
                    st = (placed, bag & ~bit)
                    if st not in seen:
                        seen.add(st)
                        queue.append(st)
    return max(n - 1, 0)


@pytest.fixture
def pw2_graph():
    """Pathwidth-2 graph with a separation order needing 2 stacks and 2 queues."""
    from prodbook import Graph

    return Graph(5, [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]), (0, 1, 2, 3, 4)
