"""Exact counts of dominating sets, legal neighborhood colorings and
existence homomorphisms, with exact checks of the matching extremal bounds."""

from .bounds import (
    BoundReport,
    EntropyReport,
    check_background_bounds,
    check_ds_bound,
    check_legal_bounds,
    check_polynomial_bounds,
    check_power_inequality,
    check_prorain_bounds,
    cycle_extremal_check,
    shearer_report,
    tree_extremal_sweep,
)
from .conditions import (
    Activation,
    ColoringCondition,
    blowup,
    legal_function_count,
    multinomial,
    weighted_legal_function_count,
)
from .counting import (
    ImageGraph,
    Polynomial,
    count_dominating_sets,
    count_independent_sets,
    count_legal_colorings,
    count_maximal_independent_sets,
    count_minimal_dominating_sets,
    cycle_xhom_closed_form,
    dominating_polynomial,
    hom_count,
    path_id_closed_form,
    xhom_count,
)
from .errors import CapExceededError, ConditionError, DomcountError, GraphError, NotRegularError
from .graph import (
    Graph,
    Hypergraph,
    bipartite_double_cover,
    closed_neighborhood,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    empty,
    enumerate_labeled_graphs,
    enumerate_labeled_regular,
    enumerate_labeled_trees,
    make_family,
    neighborhood_hypergraph,
    hypercube,
    open_neighborhood,
    parse_graph6,
    path,
    petersen,
    regular_degree,
    set_neighborhood,
    star,
    write_graph6,
)

__version__ = "0.1.0"
