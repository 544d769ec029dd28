"""Heights of transformation groups on finite topological graphs.

Core objects: graphs and their reductions, colored-multigraph automorphism
groups, orbit-closure families with their heights, subgroup schemes hitting
prescribed heights, and brute-force oracles that re-derive the same numbers
from the raw definitions.
"""

from .automorphisms import (
    AutGroup,
    AutTriple,
    ColoredGraph,
    Decoration,
    automorphisms,
    check_triple,
    colored,
    decoration_orbits,
    edge_orbits,
    vertex_orbits,
)
from .closures import (
    ClosureCell,
    ClosureFamily,
    Height,
    PhSet,
    base_height,
    closure_family,
    height_of,
    ph_set,
    poset_dot,
    require_in_ph,
)
from .dynamics import (
    FixedPoints,
    InfinityCertificate,
    PLHomeo,
    certificate_failures,
    fixed_points,
    infinity_certificate,
    verify_certificate,
)
from .errors import (
    CircleInputError,
    DomainError,
    GraphHeightError,
    GraphInputError,
    OracleBoundError,
)
from .graphs import (
    Edge,
    FamilyId,
    ReducedGraph,
    TopoGraph,
    graph_to_json,
    make_family,
    parse_graph,
    reduce_graph,
    subdivide_edges,
)
from .oracle import (
    CHAIN_CELL_BOUND,
    ChainCertificate,
    CrossCheck,
    SearchResult,
    chain_height,
    cross_check,
    enumerate_automorphisms,
    search_min_height,
    verify_chain_certificate,
)
from .report import VERSION, claimed_base, reference_claims, verify_paper
from .schemes import (
    RotationAngle,
    Scheme,
    apply_scheme,
    closed_form_height,
    lift_to_circle,
    plan,
    scheme_height,
)

__version__ = VERSION

__all__ = [
    "AutGroup",
    "AutTriple",
    "CHAIN_CELL_BOUND",
    "ChainCertificate",
    "CircleInputError",
    "ClosureCell",
    "ClosureFamily",
    "ColoredGraph",
    "CrossCheck",
    "Decoration",
    "DomainError",
    "Edge",
    "FamilyId",
    "FixedPoints",
    "GraphHeightError",
    "GraphInputError",
    "Height",
    "InfinityCertificate",
    "OracleBoundError",
    "PLHomeo",
    "PhSet",
    "ReducedGraph",
    "RotationAngle",
    "Scheme",
    "SearchResult",
    "TopoGraph",
    "VERSION",
    "apply_scheme",
    "automorphisms",
    "base_height",
    "certificate_failures",
    "chain_height",
    "check_triple",
    "claimed_base",
    "closed_form_height",
    "closure_family",
    "colored",
    "cross_check",
    "decoration_orbits",
    "edge_orbits",
    "enumerate_automorphisms",
    "fixed_points",
    "graph_to_json",
    "height_of",
    "infinity_certificate",
    "lift_to_circle",
    "make_family",
    "parse_graph",
    "ph_set",
    "plan",
    "poset_dot",
    "reduce_graph",
    "reference_claims",
    "require_in_ph",
    "scheme_height",
    "search_min_height",
    "subdivide_edges",
    "verify_certificate",
    "verify_chain_certificate",
    "vertex_orbits",
]
