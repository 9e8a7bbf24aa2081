"""dicolor: dichromatic and list-dichromatic numbers of digraphs.

Exact solvers, the constructive list-coloring procedures, acyclic-set
finders and a seeded experiment harness.
"""
from dicolor.acyclic import (
    AcyclicSetResult,
    chromatic_polynomial,
    count_acyclic_orientations,
    erdos_moser_bound,
    find_transitive_subtournament,
    greedy_acyclic_set,
    manber_tompa_bound,
    max_acyclic_set_exact,
    max_acyclic_size,
)
from dicolor.digraph import (
    AcyclicPartition,
    Bipartition,
    Coloring,
    DegreeStats,
    Digraph,
    Graph,
    ListAssignment,
    bidirect,
    degree_stats,
    is_acyclic,
    is_valid_coloring,
    topological_order,
)
from dicolor.exact import (
    SolveResult,
    dichromatic_number,
    greedy_min_inout_list_color,
    is_k_choosable,
    is_L_colorable,
    list_dichromatic_number,
    min_inout_degeneracy,
)
from dicolor.experiments import (
    exp_bipartite_lower,
    exp_mset_acyclic,
    exp_ohba_exhaustive,
    exp_random_digraph,
    exp_tournament_alpha,
)
from dicolor.generators import gen_random_complete_bipartite, gen_random_digraph, gen_random_tournament
from dicolor.io import read_digraph, write_digraph
from dicolor.procedures import (
    bipartite_random_split_color,
    build_lower_bound_instance,
    chi_lnn_split_color,
    extension_witness,
    greedy_extend,
    lll_digonfree_color,
    major_color_analysis,
    ohba_transfer,
    tournament_list_color,
)
from dicolor.report import ExperimentReport
from dicolor.rng import Rng

__version__ = "0.1.0"
