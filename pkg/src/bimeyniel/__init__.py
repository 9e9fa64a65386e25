"""Hamiltonicity of balanced bipartite digraphs under Meyniel-type degree conditions."""

from .digraph import (
    AdjacencyClass,
    AdjacencyKind,
    BipartiteDigraph,
    ConditionWitness,
    DegreeProfile,
    DigraphError,
    NoQualifyingPairError,
    Side,
    Vertex,
    adjacency_class,
    build,
    common_neighbour_witness,
    condition_witness,
    degree_profile,
    is_strong,
    satisfies_condition,
    x,
    y,
)
from .families import (
    Classification,
    ClassificationKind,
    H1Spec,
    classify_m_minus_one,
    complete_bipartite,
    directed_cycle,
    generate_h1,
    generate_h2,
    generate_h3,
    is_isomorphic,
    recognize_extremal,
)
from .hamilton import (
    BudgetExhausted,
    ConstructionTrace,
    construct_hamiltonian,
    crossing_arcs,
    even_cycle_lengths,
    find_hamiltonian_cycle,
    find_hamiltonian_path,
    near_complete_ham_path,
    reduce_factor,
    try_merge,
)
from .matching import (
    Cycle,
    CycleFactor,
    Direction,
    HallViolator,
    Matching,
    cycle_factor,
    hall_violator,
    max_matching,
)
from .textio import ParseError, parse, serialize, to_dot
from .verify import digraph_at, sharpness_report, verify_theorem

__version__ = "0.1.0"
