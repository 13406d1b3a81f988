"""k-general d-position sets in graphs: predicates, exact solvers and closed forms."""

from gpkd.errors import (
    BudgetExhausted,
    DomainError,
    GeodesicLimitExceeded,
    GpkdError,
    GraphError,
    MonotonicityViolation,
    UnreachablePairError,
)
from gpkd.graph import (
    DistMatrix,
    Graph,
    PositionParams,
    build_family,
    build_graph,
    cycle_graph,
    distance_matrix,
    grid_graph,
    path_graph,
    prism_graph,
)
from gpkd.position import find_violation, is_kgdp
from gpkd.solver import SearchOptions, SolveResult, lattice_table, solve_bruteforce, solve_exact

__version__ = "0.1.0"
