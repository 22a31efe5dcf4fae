"""Long cycles in digraphs under degree conditions on pairs of non-adjacent vertices."""

from .conditions import (
    Condition,
    ConditionReport,
    GoodPair,
    PairMode,
    check_meyniel,
    check_star,
    check_star_star,
    check_theorem_c,
    good_pairs,
    min_semidegree,
)
from .digraph import (
    Digraph,
    GraphError,
    VertexSequence,
    build,
    complete_digraph,
    directed_cycle,
    is_locally_semicomplete,
    is_semicomplete,
    is_strong,
    validate_sequence,
)
from .families import (
    complete_bipartite,
    complete_bipartite_minus_arc,
    d5,
    d6,
    recognize,
    semidegree_one_example,
    thomassen_family,
)
from .oracle import has_cycle_of_length, is_hamiltonian, is_pancyclic, spectrum

__version__ = "0.1.0"
