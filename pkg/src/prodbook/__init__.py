"""Stack, queue, dispersable and simultaneous linear layouts of graphs and graph products."""

from .constructions import (
    dispersable_from_stack,
    dispersable_path,
    extract_rainbow,
    grid_4stack,
    product_order,
    product_stack_layout,
    simultaneous_from_order,
    simultaneous_from_separated,
    product_page_bounds,
)
from .decompositions import (
    PathDecomposition,
    pd_from_11_layout,
    pd_from_simultaneous,
    verify_path_decomposition,
    vertex_separation,
)
from .graph import Graph, bipartition, generate, graph_from_edge_list, random_pathwidth
from .layouts import (
    Layout,
    SimultaneousLayout,
    density_lower_bound,
    erdos_szekeres,
    extremal_patterns,
    is_separated,
    queues_from_order,
    verify,
)
from .products import ProductGraph, product

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Layout",
    "PathDecomposition",
    "ProductGraph",
    "SimultaneousLayout",
    "bipartition",
    "density_lower_bound",
    "dispersable_from_stack",
    "dispersable_path",
    "erdos_szekeres",
    "extract_rainbow",
    "extremal_patterns",
    "generate",
    "graph_from_edge_list",
    "grid_4stack",
    "is_separated",
    "pd_from_11_layout",
    "pd_from_simultaneous",
    "product",
    "product_order",
    "product_stack_layout",
    "queues_from_order",
    "random_pathwidth",
    "simultaneous_from_order",
    "simultaneous_from_separated",
    "product_page_bounds",
    "verify",
    "verify_path_decomposition",
    "vertex_separation",
]
