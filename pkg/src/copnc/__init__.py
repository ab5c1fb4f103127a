"""Compatible normal odd partitions of cubic multigraphs.

A normal partition splits the edges of a cubic graph into trails so that
every vertex is internal to one trail and the end of exactly one trail
end; odd partitions have all trail lengths odd and induce perfect
matchings.  This package builds, transforms, searches and certifies such
partitions and compatible triples of them.
"""

from .graph import (
    BadParameter,
    CubicGraph,
    Malformed,
    NonCubic,
    bridges,
    build_graph,
    chromatic_index,
    generate,
    is_bipartite,
    parse_edge_list,
    parse_graph6,
    perfect_matchings,
    proper_3_edge_coloring,
    to_edge_list,
    to_graph6,
)
from .partition import (
    CycleError,
    InvalidPartition,
    NormalPartition,
    Trail,
    associated_matching,
    compatibility_set,
    edge_role_audit,
    is_conformal,
    is_odd,
    length_profile,
    marking_of,
    odd_edges,
    partition_violations,
    stats,
    trails_from_marking,
    triple_set,
    validate_normal,
)
from .switching import (
    BadBranch,
    CapExceeded,
    conformal_switch,
    odd_switches,
    partition_classes,
    switch,
    switch_candidates,
    switch_class,
)
from .construct import (
    ConformalTriple,
    NoMatching,
    NotBipartite,
    NotThreeEdgeColorable,
    SearchExhausted,
    bipartite_triple,
    conformal_triple,
    conformal_triple_general,
    digon_extend,
    nop_from_matching,
    triangle_extend,
)
from .families import flower_triple, goldberg_triple, petersen_triple
from .search import (
    complete_system,
    conjecture_sweep,
    enumerate_compatible_triples,
    enumerate_nops,
    fan_raspaud_witness,
    find_compatible_triple,
    find_length3_triple,
    find_nop,
)

__version__ = "0.1.0"
