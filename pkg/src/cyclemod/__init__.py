"""Cycles of k consecutive even lengths in dense graphs that avoid one
cycle length: exact small-case extremal values, verified constructions,
and the constructive pipeline that produces the cycles."""

from .errors import (
    BipartiteException,
    CycleModError,
    DegenerateU,
    EmptyCore,
    EmptyGraph,
    InternalInvariantViolation,
    InvalidChord,
    InvalidEdge,
    InvalidInput,
    InvalidVertex,
    NoDenseLayer,
    NotLocked,
    NotPrime,
    ParseError,
    PreconditionViolation,
    StageFailure,
    Stalled,
    TooLarge,
    WrongParity,
)
from .graphs import (
    Graph,
    Subgraph,
    bipartition,
    chain_copies,
    connected_components,
    degree_stats,
    disjoint_union,
    from_edge_list,
    gen_clique_blocks,
    gen_complete_bipartite,
    gen_projective_incidence,
    load_edge_list,
    masked_host_graph,
    read_edge_list,
    save_edge_list,
    subgraph_components,
    write_edge_list,
)
from .oracle import (
    CycleWitness,
    ResidueQuery,
    SearchResult,
    SpectrumResult,
    Verification,
    contains_cycle_of_length,
    cycle_lengths,
    has_cycle_mod,
    path_length_set,
    spectrum_by_subsets,
    verify_witness,
)
from .theta import ThetaGraph, gen_theta, theta_path
from .engine import (
    BfsLayering,
    ExpansionReport,
    bfs_layering,
    bipartite_half,
    dense_layer_pair,
    densest_component,
    expansion_check,
    peel_min_degree,
    posa_long_cycle,
    theta_from_cycle,
)
from .extremal import (
    ExtremalRecord,
    NamedConstruction,
    d_bounds,
    d_closed_form_odd,
    d_exact,
    lower_bound_for_c,
    named_constructions,
)
from .pipeline import (
    ConsecutiveCyclesResult,
    TheoremInput,
    assemble_cycle,
    build_report,
    consecutive_even_cycles,
    residue_witness_from_progression,
    run_to_report,
    steiner_top,
)

__version__ = "0.1.0"
