"""Command-line interface: ``prodbook <subcommand> ...``.

Exit codes: 0 success or valid, 1 a verified violation (or failed
criterion), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Optional

from . import __version__
from .acceptance import run_all, summary_table
from .constructions import (
    dispersable_from_stack,
    dispersable_path,
    grid_4stack,
    product_stack_layout,
    simultaneous_from_order,
    simultaneous_from_separated,
)
from .decompositions import (
    InconsistencyError,
    PreconditionError,
    pd_from_11_layout,
    pd_from_simultaneous,
    verify_path_decomposition,
)
from .graph import FAMILIES, Graph, GraphFormatError, generate, graph_to_edge_list, is_path_graph, load_graph, random_pathwidth
from .layouts import Layout, SimultaneousLayout, layout_from_json, verify
from .oracle import INVARIANTS, BudgetExceeded, OracleBudget, exact_invariant
from .products import KINDS, ProductGraph, product
from .render import render_arc_diagram


class UsageError(Exception):
    pass


class _Run:
    """Reads inputs, writes the output and records a reproducibility manifest."""

    def __init__(self, args: argparse.Namespace, argv: list[str]):
        self.args = args
        self.argv = argv
        self.inputs: dict[str, str] = {}

    def read(self, path: Optional[str]) -> str:
        if path is None or path == "-":
            text = sys.stdin.read()
            path = "-"
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        self.inputs[path] = hashlib.sha256(text.encode()).hexdigest()
        return text

    def read_json(self, path: Optional[str]) -> dict:
        try:
            return json.loads(self.read(path))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc})") from exc

    def graph(self, path: Optional[str]) -> Graph:
        text = self.read(path)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
            if "factor_a" in data:
                return ProductGraph.from_json(data).graph
            return Graph.from_json(data)
        return load_graph(text)

    def emit(self, payload, fmt: str = "json") -> None:
        if fmt == "json":
            text = json.dumps(payload, indent=None, separators=(",", ":"), sort_keys=False) + "\n"
        else:
            text = payload
        out = self.args.output
        if out in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        manifest_path = self.args.manifest or (None if out in (None, "-") else out + ".manifest.json")
        if manifest_path:
            manifest = {
                "command": ["prodbook", *self.argv],
                "inputs": self.inputs,
                "seed": getattr(self.args, "seed", None),
                "version": __version__,
                "outputs": {out or "-": hashlib.sha256(text.encode()).hexdigest()},
            }
            with open(manifest_path, "w", encoding="utf-8") as fh:
                json.dump(manifest, fh, indent=2, sort_keys=True)
                fh.write("\n")


def _budget(args) -> OracleBudget:
    kw = {}
    if args.budget_n is not None:
        kw["max_vertices"] = args.budget_n
    if args.budget_seconds is not None:
        kw["time_limit"] = args.budget_seconds
    return OracleBudget(**kw)


def _order_arg(run: _Run, value: Optional[str], n: int):
    if value is None:
        return None
    text = value if value.lstrip().startswith("[") else run.read(value)
    try:
        return tuple(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad order {value!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(run: _Run, args) -> int:
    params = list(args.params)
    if args.family == "random_pathwidth":
        if len(params) == 2:
            params.append(args.seed if args.seed is not None else 0)
        g, witness = random_pathwidth(*params)
        payload = {**g.to_json(), "witness_order": list(witness)}
    else:
        g = generate(args.family, *params)
        payload = g.to_json()
    if args.format == "text":
        run.emit(graph_to_edge_list(g), "text")
    else:
        run.emit(payload)
    return 0


def cmd_product(run: _Run, args) -> int:
    a, b = run.graph(args.a), run.graph(args.b)
    run.emit(product(a, b, args.kind).to_json())
    return 0


def _h_dispersable(run: _Run, args, h: Graph) -> Layout:
    if args.h_layout:
        lay = layout_from_json(run.read_json(args.h_layout))
        if not isinstance(lay, Layout):
            raise UsageError("--h-layout must be a dispersable layout")
        return lay
    if is_path_graph(h) and h.n >= 2 and list(h.edges) == [(i, i + 1) for i in range(h.n - 1)]:
        return dispersable_path(h.n)
    return exact_invariant(h, "dispersable_number", _budget(args)).witness


def _g_simultaneous(run: _Run, args, g: Graph) -> SimultaneousLayout:
    if args.g_layout:
        lay = layout_from_json(run.read_json(args.g_layout))
        if not isinstance(lay, SimultaneousLayout):
            raise UsageError("--g-layout must be a simultaneous layout")
        return lay
    order = _order_arg(run, args.order, g.n)
    if order is None:
        order = exact_invariant(g, "pathwidth", _budget(args)).witness
    return simultaneous_from_order(g, order, args.p)


def cmd_embed(run: _Run, args) -> int:
    c = args.construction
    if c == "theorem1":
        if not (args.h and args.g):
            raise UsageError("theorem1 needs --h and --g")
        h, g = run.graph(args.h), run.graph(args.g)
        pg, lay = product_stack_layout(h, _h_dispersable(run, args, h), g, _g_simultaneous(run, args, g), args.kind)
        _write_product(args, pg)
        run.emit(lay.to_json())
    elif c == "lemma2":
        g = run.graph(args.input)
        run.emit(_g_simultaneous(run, args, g).to_json())
    elif c == "lemma3":
        g = run.graph(args.input)
        if args.layout:
            stacks = layout_from_json(run.read_json(args.layout))
        else:
            stacks = exact_invariant(g, "stack_number", _budget(args)).witness
        run.emit(dispersable_from_stack(g, stacks).to_json())
    elif c == "grid4":
        if args.n is None or args.m is None:
            raise UsageError("grid4 needs --n and --m")
        pg, lay = grid_4stack(args.n, args.m)
        _write_product(args, pg)
        run.emit(lay.to_json())
    elif c == "theorem3":
        if not (args.product and args.layout):
            raise UsageError("theorem3 needs --product and --layout")
        pg = ProductGraph.from_json(run.read_json(args.product))
        lay = layout_from_json(run.read_json(args.layout))
        run.emit(simultaneous_from_separated(pg, lay).to_json())
    return 0


def _write_product(args, pg: ProductGraph) -> None:
    if args.product_output:
        with open(args.product_output, "w", encoding="utf-8") as fh:
            json.dump(pg.to_json(), fh, separators=(",", ":"))
            fh.write("\n")


def cmd_verify(run: _Run, args) -> int:
    lay = layout_from_json(run.read_json(args.layout))
    g = run.graph(args.graph) if args.graph else None
    verdict = verify(lay, g)
    run.emit(verdict.to_json())
    return 0 if verdict else 1


def cmd_decompose(run: _Run, args) -> int:
    g = run.graph(args.input)
    try:
        if args.mode == "11":
            order = _order_arg(run, args.order, g.n) or tuple(range(g.n))
            pd = pd_from_11_layout(g, order)
        else:
            if not args.layout:
                raise UsageError("decompose sq needs --layout")
            sim = layout_from_json(run.read_json(args.layout))
            if not isinstance(sim, SimultaneousLayout):
                raise UsageError("decompose sq needs a simultaneous layout")
            pd = pd_from_simultaneous(g, sim)
    except PreconditionError as exc:
        witness = exc.witness.to_json() if hasattr(exc.witness, "to_json") else exc.witness
        sys.stderr.write(json.dumps({"error": str(exc), "witness": witness}, default=list) + "\n")
        return 1
    run.emit({**pd.to_json(), "width": verify_path_decomposition(g, pd).width})
    return 0


def cmd_oracle(run: _Run, args) -> int:
    g = run.graph(args.input)
    res = exact_invariant(g, args.invariant, _budget(args))
    witness = list(res.witness) if isinstance(res.witness, tuple) else res.witness.to_json()
    run.emit({"invariant": args.invariant, "value": res.value, "witness": witness})
    return 0


def cmd_render(run: _Run, args) -> int:
    lay = layout_from_json(run.read_json(args.layout))
    g = run.graph(args.graph) if args.graph else None
    run.emit(render_arc_diagram(lay, g, force=args.force), "svg")
    return 0


def cmd_report(run: _Run, args) -> int:
    results = run_all(seeds=args.seeds, quick=args.quick)
    if args.format == "json":
        run.emit([{"key": r.key, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results])
    else:
        run.emit(summary_table(results) + "\n", "text")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--manifest", help="write a run manifest here (default <output>.manifest.json)")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget-n", type=int, help="oracle vertex budget")
    budget.add_argument("--budget-seconds", type=float, help="oracle time budget")

    p = argparse.ArgumentParser(prog="prodbook", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate a graph")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("params", type=int, nargs="+")
    s.add_argument("--seed", type=int)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("product", parents=[common], help="build a graph product")
    s.add_argument("--a", required=True, help="first factor")
    s.add_argument("--b", required=True, help="second factor")
    s.add_argument("--kind", choices=KINDS, default="strong")
    s.set_defaults(fn=cmd_product)

    s = sub.add_parser("embed", parents=[common, budget], help="run a layout construction")
    s.add_argument("construction", choices=("theorem1", "lemma2", "lemma3", "grid4", "theorem3"))
    s.add_argument("--input", "-i", help="graph (lemma2, lemma3)")
    s.add_argument("--h", help="bipartite factor H (theorem1)")
    s.add_argument("--h-layout", help="dispersable layout of H")
    s.add_argument("--g", help="factor G (theorem1)")
    s.add_argument("--g-layout", help="simultaneous layout of G")
    s.add_argument("--order", help="vertex order as a JSON list or a file holding one")
    s.add_argument("--p", type=int, help="cut bound for lemma2 (default: the order's vertex separation)")
    s.add_argument("--kind", choices=KINDS, default="strong")
    s.add_argument("--layout", help="input layout (lemma3, theorem3)")
    s.add_argument("--product", help="product JSON (theorem3)")
    s.add_argument("--product-output", help="also write the product JSON here")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.set_defaults(fn=cmd_embed)

    s = sub.add_parser("verify", parents=[common], help="verify a layout")
    s.add_argument("--layout", "--input", "-i", dest="layout", help="layout JSON (default stdin)")
    s.add_argument("--graph", help="graph or product the layout claims to cover")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("decompose", parents=[common], help="path decomposition from a layout")
    s.add_argument("mode", choices=("11", "sq"))
    s.add_argument("--input", "-i", help="graph")
    s.add_argument("--order", help="vertex order (mode 11)")
    s.add_argument("--layout", help="simultaneous layout (mode sq)")
    s.set_defaults(fn=cmd_decompose)

    s = sub.add_parser("oracle", parents=[common, budget], help="exact invariant by brute force")
    s.add_argument("--input", "-i", help="graph")
    s.add_argument("--invariant", choices=INVARIANTS, required=True)
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("render", parents=[common], help="SVG arc diagram of a layout")
    s.add_argument("--layout", "--input", "-i", dest="layout")
    s.add_argument("--graph")
    s.add_argument("--format", choices=("svg",), default="svg")
    s.add_argument("--force", action="store_true", help="render even if the layout is invalid")
    s.set_defaults(fn=cmd_render)

    s = sub.add_parser("report", parents=[common], help="run the acceptance sweep")
    s.add_argument("--seeds", type=int, default=20)
    s.add_argument("--quick", action="store_true")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(fn=cmd_report)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    run = _Run(args, argv)
    try:
        return args.fn(run, args)
    except (UsageError, GraphFormatError, PreconditionError, BudgetExceeded, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"prodbook {args.command}: {exc}\n")
        return 2
    except InconsistencyError as exc:
        sys.stderr.write(f"prodbook {args.command}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
