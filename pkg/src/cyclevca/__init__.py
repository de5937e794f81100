"""Vertex-connectivity augmentation of a cycle: make C_n plus chosen links 3-connected.

Local-search approximation, exact branch and bound, and exact-rational
lower-bound certificates.
"""

from .bounds import (
    BoundsReport,
    EllTable,
    LpCertificate,
    alpha_schedule,
    certify,
    classify_vertices,
    ell,
    ell_budget,
    ell_table,
    f_alpha,
    integral_bound,
    lp_certificates,
    lp_value,
    ratio_bound,
    refined_bound,
)
from .circle import (
    CircleComponent,
    CircleGraph,
    ComponentPartition,
    circle_graph,
    component_crosses_chord,
    component_profile,
    components,
    connects,
    link_path,
    zone_instance,
)
from .errors import *  # noqa: F401,F403
from .exact import BnBConfig, enumerate_optimum, exact_optimum
from .feasibility import (
    FeasibilityReport,
    feasible,
    is_feasible_components,
    is_feasible_crossing,
    is_three_connected,
    minimal_completion,
    prune_minimal,
)
from .generate import all_chords_instance, planted_instance, random_instance
from .instance import (
    Chord,
    Instance,
    LinkSet,
    all_chords,
    crosses,
    make_chord,
    parse_instance,
    serialize_instance,
    sides,
)
from .search import (
    SearchParams,
    SearchResult,
    SearchTrace,
    critical_violations,
    find_improving_set,
    greedy,
    is_critical,
    local_search,
    refined_local_search,
    utility,
    utility_gain,
)

__version__ = "0.1.0"
