"""Exact brute-force layout invariants for small graphs."""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .decompositions import vertex_separation
from .graph import Graph, VertexOrder, check_order, positions
from .layouts import DISPERSABLE, QUEUE, STACK, Layout, density_lower_bound, max_rainbow, queues_from_order

INVARIANTS = ("stack_number", "queue_number", "dispersable_number", "pathwidth")

ENV_BUDGET_N = "PRODBOOK_BUDGET_N"
ENV_BUDGET_SECONDS = "PRODBOOK_BUDGET_SECONDS"


class BudgetExceeded(RuntimeError):
    pass


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ[name])
    except (KeyError, ValueError):
        return default


def _env_float(name: str, default: float) -> float:
    try:
        return float(os.environ[name])
    except (KeyError, ValueError):
        return default


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = field(default_factory=lambda: _env_int(ENV_BUDGET_N, 9))
    max_edges: int = 40
    time_limit: float = field(default_factory=lambda: _env_float(ENV_BUDGET_SECONDS, 120.0))

    def check(self, g: Graph, orders: bool = True) -> None:
        if orders and g.n > self.max_vertices:
            raise BudgetExceeded(f"{g.n} vertices exceeds budget of {self.max_vertices}")
        if g.m > self.max_edges:
            raise BudgetExceeded(f"{g.m} edges exceeds budget of {self.max_edges}")


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: Union[Layout, VertexOrder]


class _Clock:
    def __init__(self, limit: float):
        self.deadline = time.monotonic() + limit

    def tick(self) -> None:
        if time.monotonic() > self.deadline:
            raise BudgetExceeded("time limit exceeded")


def vertex_orders(n: int, prune: bool = True) -> Iterator[VertexOrder]:
    """All orders of ``0..n-1``; with ``prune`` one of each order/reverse pair."""
    for perm in itertools.permutations(range(n)):
        if prune and n > 1 and perm[0] > perm[-1]:
            continue
        yield perm


# ---------------------------------------------------------------------------
# fixed-order page assignment


def _conflict_masks(g: Graph, order: VertexOrder, discipline: str) -> tuple[list, list[int]]:
    """Edges sorted by left endpoint and, per edge, a bitmask of conflicting earlier edges."""
    pos = positions(order)
    spans = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v]), (u, v)) for u, v in g.edges
    )
    masks = []
    for j, (a2, b2, e2) in enumerate(spans):
        mask = 0
        for i in range(j):
            a1, b1, e1 = spans[i]
            if discipline == QUEUE:
                bad = (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)
            else:
                bad = (a1 < a2 < b1 < b2) or (a2 < a1 < b2 < b1)
                if discipline == DISPERSABLE and not bad:
                    bad = bool(set(e1) & set(e2))
            if bad:
                mask |= 1 << i
        masks.append(mask)
    return [e for _, _, e in spans], masks


def _color(masks: list[int], k: int) -> Optional[list[int]]:
    """Backtracking k-coloring of the conflict graph; first-fit with symmetry breaking."""
    m = len(masks)
    if m == 0:
        return []
    if k <= 0:
        return None
    classes = [0] * k
    color = [-1] * m

    def place(i: int, used: int) -> bool:
        if i == m:
            return True
        for c in range(min(used + 1, k)):
            if masks[i] & classes[c]:
                continue
            classes[c] |= 1 << i
            color[i] = c
            if place(i + 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << i)
        color[i] = -1
        return False

    return color if place(0, 0) else None


def _layout_from_coloring(order, edges, color, discipline) -> Layout:
    pages: list[list] = [[] for _ in range(max(color, default=-1) + 1)]
    for e, c in zip(edges, color):
        pages[c].append(e)
    return Layout(order, pages, discipline)


def _min_colors(masks: list[int], lo: int, hi: int) -> tuple[int, list[int]]:
    for k in range(max(lo, 0), hi + 1):
        col = _color(masks, k)
        if col is not None:
            return k, col
    raise AssertionError("no coloring within the upper bound")  # pragma: no cover


def min_pages_for_order(
    g: Graph, order: VertexOrder, discipline: str, budget: Optional[OracleBudget] = None
) -> OracleResult:
    """Exact minimum number of pages for a fixed vertex order.

    Queues are exact in polynomial time via the largest rainbow; stacks and
    dispersable pages use backtracking and respect ``budget``.
    """
    order = check_order(order, g.n)
    if discipline == QUEUE:
        layout = queues_from_order(g, order)
        return OracleResult(layout.num_pages, layout)
    if discipline not in (STACK, DISPERSABLE):
        raise ValueError(f"unknown discipline {discipline!r}")
    (budget or OracleBudget()).check(g, orders=False)
    edges, masks = _conflict_masks(g, order, discipline)
    k, col = _min_colors(masks, 1 if g.m else 0, g.m)
    return OracleResult(k, _layout_from_coloring(order, edges, col, discipline))


# ---------------------------------------------------------------------------
# invariants


def _lower_bound(g: Graph, which: str) -> int:
    if g.m == 0:
        return 0
    if which == "stack_number":
        return density_lower_bound(g) if g.n >= 4 else 1
    if which == "dispersable_number":
        return g.max_degree()
    return 1


def _paged(g: Graph, discipline: str, lb: int, clock: _Clock, prune: bool) -> OracleResult:
    best: Optional[int] = None
    witness: Optional[Layout] = None
    for order in vertex_orders(g.n, prune):
        clock.tick()
        edges, masks = _conflict_masks(g, order, discipline)
        if best is None:
            k, col = _min_colors(masks, lb, g.m)
        else:
            col = _color(masks, best - 1)
            if col is None:
                continue
            k = best - 1
            while k > lb:
                better = _color(masks, k - 1)
                if better is None:
                    break
                k, col = k - 1, better
        best, witness = k, _layout_from_coloring(order, edges, col, discipline)
        if best <= lb:
            break
    if witness is None:  # n == 0
        witness = Layout((), [], discipline)
        best = 0
    return OracleResult(best, witness)


def exact_invariant(
    g: Graph, which: str, budget: Optional[OracleBudget] = None, prune: bool = True
) -> OracleResult:
    """Exact stack, queue or dispersable number, or pathwidth, with a witness.

    The witness is a layout for the page numbers and a vertex order whose
    largest vertex cut equals the pathwidth. Orders are enumerated up to
    reversal when ``prune`` is set; every invariant here is unchanged by
    reversing the order.
    """
    if which not in INVARIANTS:
        raise ValueError(f"unknown invariant {which!r}; choose from {', '.join(INVARIANTS)}")
    budget = budget or OracleBudget()
    budget.check(g)
    clock = _Clock(budget.time_limit)
    lb = _lower_bound(g, which)
    if which == "stack_number":
        return _paged(g, STACK, lb, clock, prune)
    if which == "dispersable_number":
        return _paged(g, DISPERSABLE, lb, clock, prune)

    best, best_order = None, tuple(range(g.n))
    for order in vertex_orders(g.n, prune):
        clock.tick()
        if which == "queue_number":
            value = max_rainbow(g.edges, order).size
        else:
            value = vertex_separation(g, order).max_cut
        if best is None or value < best:
            best, best_order = value, order
            if best <= lb:
                break
    if best is None:
        best = 0
    if which == "queue_number":
        return OracleResult(best, queues_from_order(g, best_order))
    return OracleResult(best, best_order)
