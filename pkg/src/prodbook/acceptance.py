"""Acceptance sweep: every bound checked on concrete instances.

Used by ``prodbook report`` and by the test suite.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import networkx as nx

from .constructions import (
    dispersable_from_stack,
    dispersable_path,
    grid_4stack,
    product_stack_layout,
    simultaneous_from_order,
    simultaneous_from_separated,
    product_page_bounds,
)
from .decompositions import pd_from_11_layout, pd_from_simultaneous, verify_path_decomposition
from .graph import Graph, complete, cycle, is_connected, path, random_pathwidth, star
from .layouts import (
    QUEUE,
    STACK,
    Layout,
    SimultaneousLayout,
    density_lower_bound,
    erdos_szekeres,
    extremal_patterns,
    is_separated,
    is_simultaneous_11,
    max_rainbow,
    verify,
)
from .oracle import OracleBudget, exact_invariant
from .products import product

KINDS = ("cartesian", "direct", "strong")


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.key} {self.title}: {self.detail} ({self.seconds:.2f}s)"


@dataclass
class Sweep:
    """Shared instances and a log of every construction output for the master check."""

    seeds: int = 20
    outputs: list = field(default_factory=list)  # (label, layout, graph)
    _hs: Optional[list] = None
    _gs: Optional[list] = None

    def record(self, label: str, layout, graph: Graph) -> None:
        self.outputs.append((label, layout, graph))

    def h_family(self) -> list[tuple[str, Graph, Layout]]:
        if self._hs is None:
            hs = []
            for n in (3, 4, 6):
                hs.append((f"P{n}", path(n), dispersable_path(n)))
            c6 = cycle(6)
            hs.append(("C6", c6, dispersable_from_stack(c6, Layout(range(6), [c6.edges], STACK))))
            k13 = star(3)
            hs.append(("K1,3", k13, exact_invariant(k13, "dispersable_number").witness))
            for name, h, lay in hs:
                self.record(f"H layout {name}", lay, h)
            self._hs = hs
        return self._hs

    def g_family(self) -> list[tuple[str, int, Graph, object]]:
        """(label, p, graph, simultaneous layout)."""
        if self._gs is None:
            gs = []
            p5 = path(5)
            gs.append(("P5", 1, p5, simultaneous_from_order(p5, range(5), 1)))
            for p in (1, 2, 3):
                for seed in range(self.seeds):
                    g, order = random_pathwidth(p, 10, seed)
                    gs.append((f"rpw({p},10,{seed})", p, g, simultaneous_from_order(g, order, p)))
            for label, _, g, sim in gs:
                self.record(f"simultaneous {label}", sim, g)
            self._gs = gs
        return self._gs


def _timed(key: str, title: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(key, title, ok, detail, time.perf_counter() - t0)


def criterion_1(sw: Sweep) -> CriterionResult:
    def run():
        count, slowest, failures = 0, 0.0, []
        for hname, h, hd in sw.h_family():
            for gname, _, g, sim in sw.g_family():
                bounds = product_page_bounds(sim.s, sim.q, hd.num_pages)
                for kind in KINDS:
                    t0 = time.perf_counter()
                    pg, lay = product_stack_layout(h, hd, g, sim, kind)
                    verdict = verify(lay, pg.graph)
                    slowest = max(slowest, time.perf_counter() - t0)
                    count += 1
                    sw.record(f"product {hname} {kind} {gname}", lay, pg.graph)
                    if not verdict or lay.num_pages > bounds[kind]:
                        failures.append(f"{hname}x{gname} {kind}: {lay.num_pages}>{bounds[kind]} or {verdict.reason}")
        ok = not failures and slowest < 1.0
        return ok, f"{count} instances, slowest {slowest:.3f}s" + (f"; {failures[:3]}" if failures else "")

    return _timed("C1", "product page bounds", run)


def criterion_2(sw: Sweep) -> CriterionResult:
    def run():
        count, failures = 0, []
        for n in range(3, 9):
            hd = dispersable_path(n)
            for gname, p, g, sim in sw.g_family():
                pg, lay = product_stack_layout(path(n), hd, g, sim, "strong")
                count += 1
                sw.record(f"path product P{n} {gname}", lay, pg.graph)
                if not verify(lay, pg.graph) or lay.num_pages > 5 * p + 2:
                    failures.append(f"P{n}x{gname}: {lay.num_pages} > {5 * p + 2}")
        return not failures, f"{count} instances within 5p+2" if not failures else "; ".join(failures[:3])

    return _timed("C2", "path x pathwidth-p strong product <= 5p+2 stacks", run)


def criterion_3(sw: Sweep) -> CriterionResult:
    def run():
        failures = []
        for n in range(2, 9):
            for m in range(2, 9):
                pg, lay = grid_4stack(n, m)
                sw.record(f"grid {n}x{m}", lay, pg.graph)
                if not verify(lay, pg.graph) or lay.num_pages > 4:
                    failures.append((n, m))
        return not failures, "49 grids valid on <= 4 stacks" if not failures else f"failed {failures}"

    r = _timed("C3", "4-stack layout of path x path", run)
    if r.passed and r.seconds >= 1.0:
        r.passed, r.detail = False, r.detail + " but exceeded 1 s"
    return r


def criterion_4(sw: Sweep) -> CriterionResult:
    def run():
        bad = []
        for n in range(3, 11):
            lay = dispersable_path(n)
            sw.record(f"dispersable path {n}", lay, path(n))
            if not verify(lay, path(n)) or lay.num_pages != 2:
                bad.append(f"construction n={n}")
        for n in range(3, 9):
            res = exact_invariant(path(n), "dispersable_number")
            sw.record(f"oracle dsn P{n}", res.witness, path(n))
            if res.value != 2:
                bad.append(f"oracle n={n} gave {res.value}")
        return not bad, "dsn(P_n)=2 for 3<=n<=10 (construction), 3<=n<=8 (oracle)" if not bad else "; ".join(bad)

    return _timed("C4", "dispersable path on 2 pages", run)


def criterion_5(sw: Sweep) -> CriterionResult:
    def run():
        vals = {}
        k6_time = 0.0
        for k in (2, 3):
            g = complete(2 * k)
            t0 = time.perf_counter()
            sn = exact_invariant(g, "stack_number", OracleBudget(time_limit=60.0))
            if k == 3:
                k6_time = time.perf_counter() - t0
            qn = exact_invariant(g, "queue_number")
            sw.record(f"oracle sn K{2 * k}", sn.witness, g)
            sw.record(f"oracle qn K{2 * k}", qn.witness, g)
            vals[2 * k] = (sn.value, qn.value)
        ok = vals == {4: (2, 2), 6: (3, 3)} and k6_time < 60
        return ok, f"(sn, qn): K4={vals[4]}, K6={vals[6]}; K6 stack search {k6_time:.2f}s"

    return _timed("C5", "complete graph stack/queue numbers", run)


def small_graphs(max_n: int):
    """All graphs on 1..max_n vertices up to isomorphism."""
    for G in nx.graph_atlas_g():
        k = G.number_of_nodes()
        if 1 <= k <= max_n:
            yield Graph(k, G.edges())


def criterion_6(sw: Sweep, max_n: int = 6) -> CriterionResult:
    def run():
        graphs = pairs = 0
        failures = []
        for g in small_graphs(max_n):
            graphs += 1
            for order in itertools.permutations(range(g.n)):
                if is_simultaneous_11(g, order) is not None:
                    continue
                pairs += 1
                pd = pd_from_11_layout(g, order)
                ok = (
                    verify_path_decomposition(g, pd).valid
                    and len(pd.bags) == g.n
                    and all(len(b) <= 3 for b in pd.bags)
                    and all(order[x] in pd.bags[x] for x in range(g.n))
                )
                if not ok:
                    failures.append((g.edges, order))
        return not failures, f"{pairs} (graph, order) pairs over {graphs} graphs" + (
            f"; failures {failures[:2]}" if failures else ""
        )

    return _timed("C6", "width-2 decomposition of 1-stack 1-queue layouts", run)


def criterion_7(sw: Sweep) -> CriterionResult:
    def run():
        failures = []
        for gname, _, g, sim in sw.g_family():
            pd = pd_from_simultaneous(g, sim)
            bound = 2 * sim.s * sim.q
            check = verify_path_decomposition(g, pd)
            if not check or pd.width > bound or any(len(b) > bound + 1 for b in pd.bags):
                failures.append(f"{gname}: width {pd.width} > {bound}")
        return not failures, f"{len(sw.g_family())} layouts within 2sq" if not failures else "; ".join(failures[:3])

    return _timed("C7", "pathwidth <= 2sq from simultaneous layouts", run)


def criterion_8(sw: Sweep) -> CriterionResult:
    def run():
        failures, count, worst = [], 0, 0
        for hname, h, hd in sw.h_family():
            if not hname.startswith("P"):
                continue
            for gname, _, g, sim in sw.g_family():
                pg, lay = product_stack_layout(h, hd, g, sim, "strong")
                s = lay.num_pages
                if not is_separated(pg, lay).separated:
                    failures.append(f"{hname}x{gname} not separated")
                    continue
                out = simultaneous_from_separated(pg, lay)
                count += 1
                sw.record(f"separated {hname} {gname}", out, g)
                rainbow = max_rainbow(g.edges, out.order).size
                worst = max(worst, rainbow)
                if not verify(out, g) or out.s > s or out.q > s * s or rainbow > s * s:
                    failures.append(f"{hname}x{gname}: s={out.s}, q={out.q}, bound {s}")
        return not failures, f"{count} separated layouts; largest rainbow {worst}" + (
            f"; {failures[:3]}" if failures else ""
        )

    return _timed("C8", "separated layout gives s-stack s^2-queue layout", run)


def criterion_9(sw: Sweep, trials: int = 10_000, seed: int = 0) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        bad = 0
        for a in range(1, 5):
            for b in range(1, 5):
                length = a * b + 1
                for _ in range(trials):
                    seq = rng.sample(range(10 * length), length)
                    r = erdos_szekeres(seq, a, b)
                    vals = r.values
                    need = a + 1 if r.kind == "increasing" else b + 1
                    mono = all(x < y for x, y in zip(vals, vals[1:])) if r.kind == "increasing" else all(
                        x > y for x, y in zip(vals, vals[1:])
                    )
                    sub = list(r.indices) == sorted(r.indices) and all(seq[i] == x for i, x in zip(r.indices, vals))
                    if len(vals) < need or not mono or not sub:
                        bad += 1
        return bad == 0, f"{16 * trials} sequences, {bad} bad"

    r = _timed("C9", "monotone subsequence extraction", run)
    if r.passed and r.seconds >= 5.0:
        r.passed, r.detail = False, r.detail + " but exceeded 5 s"
    return r


def criterion_10(sw: Sweep) -> CriterionResult:
    def run():
        count, bad = 0, []
        for g in small_graphs(6):
            if g.n < 4 or not is_connected(g):
                continue
            count += 1
            res = exact_invariant(g, "stack_number")
            sw.record(f"oracle sn {g.edges}", res.witness, g)
            if density_lower_bound(g) > res.value:
                bad.append(g.edges)
        big = product(path(10), complete(4), "strong").graph
        trend = density_lower_bound(big)
        target = 3 * 2 - 1
        ok = not bad and trend >= target
        return ok, f"{count} connected graphs; density bound of P10 x K4 = {trend} (>= {target})"

    return _timed("C10", "density bound below exact stack number", run)


def criterion_11(sw: Sweep) -> CriterionResult:
    def run():
        bad = [label for label, lay, g in sw.outputs if not verify(lay, g)]
        # every construction reproduces byte-identically
        again = Sweep(seeds=sw.seeds)
        same = all(
            json.dumps(a[3].to_json()) == json.dumps(b[3].to_json())
            for a, b in zip(sw.g_family(), again.g_family())
        )
        pg, lay = grid_4stack(5, 6)
        same = same and json.dumps(lay.to_json()) == json.dumps(grid_4stack(5, 6)[1].to_json())
        # violation reports reproduce: merge pages of valid layouts and verify twice
        rng = random.Random(11)
        reports = 0
        unstable = 0
        for label, lay, g in sw.outputs:
            if not isinstance(lay, Layout) or lay.num_pages < 2:
                continue
            merged = Layout(lay.order, [sum(lay.pages, ())], lay.discipline)
            v1, v2 = verify(merged, g), verify(Layout(merged.order, merged.pages, merged.discipline), g)
            if not v1:
                reports += 1
                if v1 != v2:
                    unstable += 1
            shuffled = list(lay.order)
            rng.shuffle(shuffled)
            w1 = verify(Layout(shuffled, lay.pages, lay.discipline), g)
            w2 = verify(Layout(shuffled, lay.pages, lay.discipline), g)
            if w1 != w2:
                unstable += 1
        # every verified layout respects the twist/rainbow limits
        pattern_bad = 0
        for label, lay, g in sw.outputs:
            pats = extremal_patterns(g, lay.order)
            if isinstance(lay, SimultaneousLayout):
                pattern_bad += pats.max_twist.size > lay.s or pats.max_rainbow.size > lay.q
            elif lay.discipline == QUEUE:
                pattern_bad += pats.max_rainbow.size > lay.num_pages
            else:
                pattern_bad += pats.max_twist.size > lay.num_pages
        ok = not bad and same and unstable == 0 and pattern_bad == 0
        return ok, (
            f"{len(sw.outputs)} outputs verified ({len(bad)} invalid); reruns identical={same}; "
            f"{reports} violation reports reproducible ({unstable} unstable); "
            f"{pattern_bad} layouts exceed their twist/rainbow limit"
        )

    return _timed("C11", "master property: outputs verify, reports deterministic", run)


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_all(seeds: int = 20, quick: bool = False) -> list[CriterionResult]:
    """Run every criterion in order. ``quick`` shrinks the exhaustive sweeps."""
    sw = Sweep(seeds=seeds)
    out = []
    for fn in CRITERIA:
        if quick and fn is criterion_6:
            out.append(criterion_6(sw, max_n=5))
        elif quick and fn is criterion_9:
            out.append(criterion_9(sw, trials=1000))
        else:
            out.append(fn(sw))
    return out


def summary_table(results: list[CriterionResult]) -> str:
    rows = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    rows.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(rows)
