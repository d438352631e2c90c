"""defect-lab: exact colouring-defect computations for cubic graphs."""

from .graphs import (
    ABOVE_CAP,
    CubicGraph,
    Cycle,
    EdgeCut,
    Multipole,
    as_graph,
    as_multipole,
    canonical_form,
    contract,
    cycle_boundary,
    cycles_of_length,
    cyclic_edge_connectivity,
    delete_vertices,
    girth,
    induced_cycles,
    is_cyclically_k_connected,
    is_isomorphic,
    junction,
    parse_graph6,
    parse_mpole,
    smooth_edge,
    to_graph6,
    to_mpole,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
