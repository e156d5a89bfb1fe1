import itertools
import math
import random

import pytest

from prodbook import (
    Graph,
    Layout,
    SimultaneousLayout,
    dispersable_from_stack,
    dispersable_path,
    extract_rainbow,
    extremal_patterns,
    grid_4stack,
    is_separated,
    product,
    product_order,
    product_stack_layout,
    random_pathwidth,
    simultaneous_from_order,
    simultaneous_from_separated,
    product_page_bounds,
    verify,
    vertex_separation,
)
from prodbook.constructions import RainbowBoundError, bipartite_edge_coloring
from prodbook.decompositions import PreconditionError
from prodbook.graph import BLACK, WHITE, bipartition, complete, complete_bipartite, cycle, path, positions, star
from prodbook.oracle import exact_invariant, min_pages_for_order

from conftest import brute_layout_ok, brute_max_pattern, cross, independent

KINDS = ("cartesian", "direct", "strong")


# simultaneous layouts from a low-separation order


def test_path_one_stack_one_queue():
    sim = simultaneous_from_order(path(6), range(6), 1)
    assert (sim.s, sim.q) == (1, 1)
    assert verify(sim, path(6))


def test_pathwidth_two_example(pw2_graph):
    g, order = pw2_graph
    assert exact_invariant(g, "pathwidth").value == 2
    assert vertex_separation(g, order).max_cut == 2
    sim = simultaneous_from_order(g, order, 2)
    assert verify(sim, g)
    assert (sim.s, sim.q) == (2, 2)
    assert min_pages_for_order(g, order, "stack").value == 2
    assert min_pages_for_order(g, order, "queue").value == 2


@pytest.mark.parametrize("seed", range(15))
def test_random_pathwidth_three(seed):
    g, order = random_pathwidth(3, 12, seed)
    sim = simultaneous_from_order(g, order, 3)
    assert verify(sim, g)
    assert sim.s <= 3 and sim.q <= 3
    assert set(e for p in sim.stack_pages for e in p) == set(g.edges)


def test_forward_edges_share_a_stack():
    g, order = random_pathwidth(3, 15, 4)
    sim = simultaneous_from_order(g, order, 3)
    pos = positions(order)
    stack_of = {e: i for i, p in enumerate(sim.stack_pages) for e in p}
    for v in range(g.n):
        fwd = {stack_of[e] for e in g.edges if v in e and pos[v] == min(pos[e[0]], pos[e[1]])}
        assert len(fwd) <= 1


def test_simultaneous_rejects_large_cut():
    with pytest.raises(PreconditionError):
        simultaneous_from_order(complete(4), range(4), 2)
    sim = simultaneous_from_order(complete(4), range(4))
    assert verify(sim, complete(4)) and sim.s <= 3 and sim.q <= 3


def test_simultaneous_isolated_vertices():
    g = Graph(5, [(1, 3)])
    sim = simultaneous_from_order(g, range(5), 1)
    assert verify(sim, g) and (sim.s, sim.q) == (1, 1)


# product order


def test_product_order_rules():
    h = path(3)
    colors = bipartition(h)
    assert colors == (WHITE, BLACK, WHITE)
    sigma = (2, 0, 1)
    phi = product_order((1, 0, 2), sigma, colors)
    # vertex 1 is black so its copy runs backwards
    assert phi == (4, 3, 5, 2, 0, 1, 8, 6, 7)
    pos = positions(phi)
    for a, b in itertools.combinations(range(9), 2):
        (v, x), (u, y) = divmod(a, 3), divmod(b, 3)
        pi_pos = {1: 0, 0: 1, 2: 2}
        s_pos = positions(sigma)
        if v != u:
            expect = pi_pos[v] < pi_pos[u]
        elif colors[v] == WHITE:
            expect = s_pos[x] < s_pos[y]
        else:
            expect = s_pos[y] < s_pos[x]
        assert (pos[a] < pos[b]) == expect


# product layouts


def test_product_page_bounds_formula():
    assert product_page_bounds(1, 1, 2) == {"cartesian": 3, "direct": 4, "strong": 7}


@pytest.mark.parametrize("kind,bound", [("strong", 7), ("cartesian", 3), ("direct", 4)])
def test_p4_p5_examples(kind, bound):
    g = path(5)
    sim = simultaneous_from_order(g, range(5), 1)
    pg, lay = product_stack_layout(path(4), dispersable_path(4), g, sim, kind)
    assert verify(lay, pg.graph)
    assert brute_layout_ok(lay.order, lay.pages, "stack", pg.graph.edges)
    assert lay.num_pages <= bound


def _h_family():
    k13 = star(3)
    c6 = cycle(6)
    return [
        (path(3), dispersable_path(3)),
        (path(6), dispersable_path(6)),
        (c6, dispersable_from_stack(c6, Layout(range(6), [c6.edges], "stack"))),
        (k13, exact_invariant(k13, "dispersable_number").witness),
        (complete_bipartite(2, 3), None),
    ]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("seed", range(6))
def test_product_layouts_within_bounds(kind, seed):
    rng = random.Random(seed)
    p = rng.randint(1, 3)
    g, order = random_pathwidth(p, 8, seed)
    sim = simultaneous_from_order(g, order, p)
    for h, disp in _h_family():
        if disp is None:
            disp = dispersable_from_stack(h, exact_invariant(h, "stack_number").witness)
        pg, lay = product_stack_layout(h, disp, g, sim, kind)
        assert verify(lay, pg.graph)
        assert lay.num_pages <= product_page_bounds(sim.s, sim.q, disp.num_pages)[kind]
        if h == path(h.n):
            assert is_separated(pg, lay).separated


def test_direct_groups_never_hold_crossing_pairs():
    """Randomised search for a crossing pair inside one direct-edge page."""
    rng = random.Random(2024)
    for trial in range(60):
        p = rng.randint(1, 3)
        g, order = random_pathwidth(p, rng.randint(3, 9), trial)
        perm = list(range(g.n))
        rng.shuffle(perm)
        g = g.relabel(perm)
        order = tuple(perm[v] for v in order)
        sim = simultaneous_from_order(g, order, p)
        n = rng.randint(2, 6)
        pg, lay = product_stack_layout(path(n), dispersable_path(n), g, sim, "direct")
        pos = positions(lay.order)
        for page in lay.pages:
            for e, f in itertools.combinations(page, 2):
                assert not (independent(e, f) and cross(e, f, pos))


def test_product_preconditions():
    g = path(3)
    sim = simultaneous_from_order(g, range(3), 1)
    with pytest.raises(PreconditionError):
        product_stack_layout(cycle(3), Layout(range(3), [[(0, 1)], [(1, 2)], [(0, 2)]], "dispersable"), g, sim, "strong")
    bad_disp = Layout(range(3), [path(3).edges], "dispersable")
    with pytest.raises(PreconditionError):
        product_stack_layout(path(3), bad_disp, g, sim, "strong")
    bad_sim = SimultaneousLayout(range(3), [g.edges], [])
    with pytest.raises(PreconditionError):
        product_stack_layout(path(3), dispersable_path(3), g, bad_sim, "strong")


# dispersable layouts


def test_dispersable_path_examples():
    assert dispersable_path(5).pages == (((0, 1), (2, 3)), ((1, 2), (3, 4)))
    assert dispersable_path(2).num_pages == 1
    lay = dispersable_path(10)
    assert verify(lay, path(10)) and lay.num_pages == 2
    with pytest.raises(ValueError):
        dispersable_path(1)


@pytest.mark.parametrize(
    "g,expected",
    [(path(6), 2), (cycle(6), 2), (star(3), 3)],
)
def test_dispersable_from_one_stack(g, expected):
    one = Layout(range(g.n), [g.edges], "stack")
    assert verify(one, g)
    disp = dispersable_from_stack(g, one)
    assert verify(disp, g)
    assert disp.num_pages == expected == g.max_degree()


def test_dispersable_from_several_stacks():
    g = complete_bipartite(3, 3)
    stacks = exact_invariant(g, "stack_number").witness
    disp = dispersable_from_stack(g, stacks)
    assert verify(disp, g)
    assert disp.num_pages <= stacks.num_pages * g.max_degree()


def test_dispersable_rejects_odd_cycle():
    with pytest.raises(PreconditionError):
        dispersable_from_stack(cycle(5), Layout(range(5), [cycle(5).edges], "stack"))


@pytest.mark.parametrize("seed", range(30))
def test_bipartite_edge_coloring_uses_delta(seed):
    rng = random.Random(seed)
    a, b = rng.randint(1, 6), rng.randint(1, 6)
    edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < 0.5]
    if not edges:
        return
    rng.shuffle(edges)
    col = bipartite_edge_coloring(edges)
    deg = Graph(a + b, edges).max_degree()
    assert set(col.values()) <= set(range(deg))
    for e, f in itertools.combinations(col, 2):
        if set(e) & set(f):
            assert col[e] != col[f]


# grids


@pytest.mark.parametrize("n,m", list(itertools.product(range(2, 9), repeat=2)))
def test_grid_4stack_exhaustive(n, m):
    pg, lay = grid_4stack(n, m)
    assert verify(lay, pg.graph)
    assert lay.num_pages <= 4
    assert pg.graph == product(path(n), path(m), "strong").graph


def test_grid_4stack_examples():
    pg, lay = grid_4stack(4, 5)
    assert lay.num_pages == 4 and pg.graph.m == 55
    assert brute_layout_ok(lay.order, lay.pages, "stack", pg.graph.edges)
    pg, lay = grid_4stack(2, 2)
    assert pg.graph == complete(4) and verify(lay, pg.graph)
    with pytest.raises(ValueError):
        grid_4stack(1, 3)


def test_grid_order_alternates():
    pg, lay = grid_4stack(3, 4)
    assert lay.order == (0, 1, 2, 3, 7, 6, 5, 4, 8, 9, 10, 11)


# rainbow extraction


@pytest.mark.parametrize("seed", range(40))
def test_extract_rainbow_from_stack_layout(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    order = list(range(2 * n))
    rights = list(range(n, 2 * n))
    rng.shuffle(rights)
    edges = [(i, rights[i]) for i in range(n)]
    s = min_pages_for_order(Graph(2 * n, edges), tuple(order), "stack").value
    got = extract_rainbow(edges, tuple(order), s)
    assert got.twist is None
    assert len(got.rainbow) >= math.ceil(n / s)
    assert brute_max_pattern(got.rainbow, order, "rainbow") == len(got.rainbow)


def test_extract_rainbow_reports_twist():
    # three crossing edges claimed to fit on one stack
    got = extract_rainbow([(0, 3), (1, 4), (2, 5)], tuple(range(6)), 1)
    assert got.twist == ((0, 3), (1, 4), (2, 5))


def test_extract_rainbow_errors():
    with pytest.raises(ValueError):
        extract_rainbow([(0, 1), (1, 2)], (0, 1, 2), 1)
    with pytest.raises(ValueError):
        extract_rainbow([(0, 1), (2, 3)], (0, 1, 2, 3), 1)
    with pytest.raises(ValueError):
        extract_rainbow([(0, 1)], (0, 1), 0)


# separated layouts back to the factor


def test_separated_pipeline_p3_p4():
    g = path(4)
    sim = simultaneous_from_order(g, range(4), 1)
    pg, lay = product_stack_layout(path(3), dispersable_path(3), g, sim, "strong")
    assert lay.num_pages <= 7 and is_separated(pg, lay).separated
    out = simultaneous_from_separated(pg, lay)
    assert verify(out, g)
    s = lay.num_pages
    assert out.s <= s and out.q <= s * s
    assert out.q == 1


def test_separated_pipeline_k4():
    k4 = complete(4)
    pg = product(path(2), k4, "strong")
    # copies as blocks, pages minimised for that order
    lay = min_pages_for_order(pg.graph, tuple(range(8)), "stack").witness
    assert is_separated(pg, lay).separated
    out = simultaneous_from_separated(pg, lay)
    s = lay.num_pages
    assert verify(out, k4)
    assert out.s <= s and out.q <= s * s
    assert extremal_patterns(k4, out.order).max_rainbow.size <= s * s


def test_separated_rejects_interleaved():
    pg = product(path(2), path(2), "strong")
    lay = min_pages_for_order(pg.graph, (0, 2, 1, 3), "stack").witness
    with pytest.raises(PreconditionError):
        simultaneous_from_separated(pg, lay)


def test_separated_rejects_invalid_layout():
    pg = product(path(2), path(3), "strong")
    lay = Layout(range(6), [pg.graph.edges], "stack")
    with pytest.raises(PreconditionError):
        simultaneous_from_separated(pg, lay)


def test_rainbow_contradiction_returns_twist():
    # G has a 2-rainbow under its copy order; one page cannot hold P2 x G
    g = Graph(4, [(0, 3), (1, 2)])
    pg = product(path(2), g, "strong")
    lay = Layout(range(8), [pg.graph.edges], "stack")
    assert not verify(lay, pg.graph)
    with pytest.raises(RainbowBoundError) as info:
        simultaneous_from_separated(pg, lay, check=False)
    err = info.value
    assert err.rainbow.size == 2
    assert err.twist.size > 1
    assert brute_max_pattern(err.twist.edges, range(8), "twist") == err.twist.size
