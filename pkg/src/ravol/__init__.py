"""Right-angled volumes of prime alternating links."""
from .circuits import (
    BoundingPair,
    FourCircuit,
    ParallelClass,
    classify_circuit,
    crossing_parallel,
    enumerate_four_circuits,
    is_prismatic,
    maximal_bounding_pairs,
    parallel_classes,
)
from .diagram import (
    Diagram,
    PDCode,
    ValidationReport,
    build_diagram,
    diagram_to_pd,
    format_pd,
    parse_pd,
    twist_number,
    validate_diagram,
)
from .errors import RavolError
from .geometry import (
    CirclePattern,
    KiteComplex,
    build_kite_complex,
    layout_pattern,
    polyhedron_volume,
    realize,
    render_svg,
    solve_pattern,
)
from .hypvol import V_OCT, V_TET, VolumeReport, ast_lower_bound, lobachevsky, volp
from .reduce import TRIVIAL, TrivialDiagram, is_torus_2q, rational_reduce, rational_reduce_step
from .split import PolyhedralGraph, andreev_pipeline, split_along, validate_andreev
from .weaving import WeavingState, w3q_state, w3q_volume, weaving_diagram

__version__ = "0.1.0"

__all__ = [
    "BoundingPair",
    "CirclePattern",
    "Diagram",
    "FourCircuit",
    "KiteComplex",
    "PDCode",
    "ParallelClass",
    "PolyhedralGraph",
    "RavolError",
    "TRIVIAL",
    "TrivialDiagram",
    "V_OCT",
    "V_TET",
    "ValidationReport",
    "VolumeReport",
    "WeavingState",
    "andreev_pipeline",
    "ast_lower_bound",
    "build_diagram",
    "build_kite_complex",
    "classify_circuit",
    "crossing_parallel",
    "diagram_to_pd",
    "enumerate_four_circuits",
    "format_pd",
    "is_prismatic",
    "is_torus_2q",
    "layout_pattern",
    "lobachevsky",
    "maximal_bounding_pairs",
    "parallel_classes",
    "parse_pd",
    "polyhedron_volume",
    "rational_reduce",
    "rational_reduce_step",
    "realize",
    "render_svg",
    "solve_pattern",
    "split_along",
    "twist_number",
    "validate_andreev",
    "validate_diagram",
    "volp",
    "w3q_state",
    "w3q_volume",
    "weaving_diagram",
]
