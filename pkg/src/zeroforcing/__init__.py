"""Zero forcing on graphs: process simulation, exact solvers, gadget families."""

from .errors import (
    BudgetExceededError,
    DegreeOverflowError,
    DomainError,
    Graph6Error,
    MalformedHeaderError,
    SelfLoopError,
    TooLargeError,
    TrailingGarbageError,
    TruncatedBitstreamError,
    VertexRangeError,
)
from .families import (
    CoreIntersectionReport,
    FamilyGraph,
    GadgetAttachment,
    RatioReport,
    binary_tree,
    canonical_forcing_set,
    core_intersection_check,
    core_seed_bound,
    cycle_gadget_family,
    family_order,
    hairy_cycle,
    inject_gadget,
    random_cubic,
    random_tree_max3,
    ratio_report,
    subdivided_k4,
    tree_gadget_family,
)
from .forcing import (
    ColorState,
    ForceEvent,
    ForcingChronicle,
    closure,
    closure_set,
    closure_within,
    force_round,
    is_zero_forcing_set,
    propagation_time,
)
from .graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    degree_profile,
    from_edge_list,
    from_json_dict,
    is_connected,
    parse_graph6,
    parse_json,
    path_graph,
    to_dot,
    to_json_dict,
    write_graph6,
    write_json,
)
from .solver import (
    BoundFormula,
    BoundValue,
    Certificate,
    SearchStats,
    SolverResult,
    bound_amos,
    bound_conjecture_third,
    bound_girth5,
    bound_gr,
    verify_no_smaller,
    z_branch_and_bound,
    z_exhaustive,
    z_formula,
)

__version__ = "0.1.0"
