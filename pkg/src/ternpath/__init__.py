"""Ternary (and k-ary) idempotent Gamma-semiring path algebras."""

from .algebra import (
    DEFAULT_GAMMA,
    INF,
    AlgebraError,
    AlgebraInstance,
    AxiomReport,
    DomainError,
    aggregate_all,
    check_all,
    check_distributivity,
    check_monotonicity,
    check_semilattice,
    check_ternary_associativity,
    leq,
)
from .graph import (
    DirectedWeightedGraph,
    WindowGraph,
    build_window_graph,
    enumerate_windows_into,
    load_graph,
    window_counts,
)
from .instances import bool_f2, load_table, minplus_degenerate, resolve
from .paths import (
    ParityError,
    enumerate_parenthesizations,
    eval_parenthesization,
    fold_odd,
    oracle_opt,
    path_cost,
    seeded_fold,
)
from .separation import search_binary_factorization, search_nondegenerate_ttgs, verify_separation
from .solver import (
    check_descending,
    init_state,
    iteration_bound_report,
    operator_monotonicity_probe,
    relax_step,
    solve,
)

__version__ = "0.1.0"
