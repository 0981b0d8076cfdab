"""Network hyper-motif analysis: enriched motif combinations in directed
networks, combination/interaction enumeration, and Hill-kinetics circuit
dynamics."""

__version__ = "0.1.0"

from .census import (
    MUTUAL_DYAD_CLASS,
    RoleAssignment,
    find_motifs,
    motif_zscores,
    mutual_dyad_count,
    role_assignment,
    subgraph_census_upto3,
    triad_census,
)
from .combinatorics import (
    CombinationTopology,
    count_extension_frequencies,
    count_interaction_topologies,
    enumerate_core_combinations,
    enumerate_extensions,
    max_shared_nodes,
)
from .detect import (
    CombinationStat,
    bh_correct,
    combination_stats,
    detect,
    detect_detailed,
    enrichment,
    jaccard,
    self_role_repetition,
)
from .graph import (
    DirectedGraph,
    EdgeListError,
    GraphError,
    degree_sequences,
    load_edge_list,
    load_edge_list_with_report,
    save_edge_list,
)
from .motifs import (
    CONNECTED_TRIAD_CLASSES,
    NAMED_MOTIFS,
    SELF_LOOP_CLASS,
    MotifClass,
    RoleOrbit,
    canonical_class,
    motif_class_from_edges,
    named_motif,
    role_orbits,
)
from .nullmodels import (
    AnnealConfig,
    NullModelConfig,
    anneal_to_census,
    generate_ensemble,
    generate_motif_null_ensemble,
    rewire_degree_preserving,
    rewire_with_free_self_loops,
)
from .sampling import DownsampleConfig, downsample, validate_downsample

__all__ = [
    "__version__",
    "DirectedGraph",
    "GraphError",
    "EdgeListError",
    "load_edge_list",
    "load_edge_list_with_report",
    "save_edge_list",
    "degree_sequences",
    "DownsampleConfig",
    "downsample",
    "validate_downsample",
    "MotifClass",
    "RoleOrbit",
    "canonical_class",
    "motif_class_from_edges",
    "role_orbits",
    "named_motif",
    "NAMED_MOTIFS",
    "SELF_LOOP_CLASS",
    "CONNECTED_TRIAD_CLASSES",
    "MUTUAL_DYAD_CLASS",
    "triad_census",
    "subgraph_census_upto3",
    "mutual_dyad_count",
    "motif_zscores",
    "find_motifs",
    "RoleAssignment",
    "role_assignment",
    "NullModelConfig",
    "AnnealConfig",
    "rewire_degree_preserving",
    "rewire_with_free_self_loops",
    "anneal_to_census",
    "generate_ensemble",
    "generate_motif_null_ensemble",
    "jaccard",
    "self_role_repetition",
    "enrichment",
    "bh_correct",
    "CombinationStat",
    "combination_stats",
    "detect",
    "detect_detailed",
    "max_shared_nodes",
    "count_interaction_topologies",
    "enumerate_core_combinations",
    "enumerate_extensions",
    "count_extension_frequencies",
    "CombinationTopology",
]
