import re
import xml.etree.ElementTree as ET

import pytest

from prodbook import Layout, grid_4stack, simultaneous_from_order
from prodbook.graph import path
from prodbook.render import render_arc_diagram

NS = "{http://www.w3.org/2000/svg}"


def _parse(svg):
    root = ET.fromstring(svg)
    circles = root.findall(f"{NS}circle")
    arcs = root.findall(f"{NS}path")
    return root, circles, arcs


def _baseline(circles):
    ys = {c.get("cy") for c in circles}
    assert len(ys) == 1
    return float(ys.pop())


def _sweep(arc):
    # "M x1 y A r r 0 0 sweep x2 y"
    return int(arc.get("d").split()[8])


def test_path_one_stack():
    lay = Layout(range(5), [path(5).edges], "stack")
    _, circles, arcs = _parse(render_arc_diagram(lay, path(5)))
    assert len(circles) == 5 and len(arcs) == 4
    assert all("stack" in a.get("class") for a in arcs)
    assert all(_sweep(a) == 1 for a in arcs)
    xs = [float(c.get("cx")) for c in circles]
    assert xs == sorted(xs)


def test_grid_four_colours():
    pg, lay = grid_4stack(4, 5)
    _, circles, arcs = _parse(render_arc_diagram(lay, pg.graph))
    assert len(circles) == 20 and len(arcs) == 55
    assert len({a.get("stroke") for a in arcs}) == 4
    assert {a.get("data-page") for a in arcs} == {"0", "1", "2", "3"}


def test_simultaneous_above_and_below(pw2_graph):
    g, order = pw2_graph
    sim = simultaneous_from_order(g, order, 2)
    _, circles, arcs = _parse(render_arc_diagram(sim, g))
    stacks = [a for a in arcs if "stack" in a.get("class")]
    queues = [a for a in arcs if "queue" in a.get("class")]
    assert len(stacks) == len(queues) == g.m
    assert all(_sweep(a) == 1 for a in stacks) and all(_sweep(a) == 0 for a in queues)
    assert len(circles) == g.n


def test_refuses_invalid_unless_forced():
    lay = Layout(range(4), [[(0, 2), (1, 3)]], "stack")
    with pytest.raises(ValueError):
        render_arc_diagram(lay)
    svg = render_arc_diagram(lay, force=True)
    assert len(_parse(svg)[2]) == 2


def test_deterministic_and_labelled():
    lay = Layout((2, 0, 1), [[(0, 1), (0, 2)], [(1, 2)]], "stack")
    a, b = render_arc_diagram(lay), render_arc_diagram(lay)
    assert a == b
    assert re.findall(r">(\d+)</text>", a) == ["2", "0", "1"]
    assert "<text" not in render_arc_diagram(lay, labels=False)
