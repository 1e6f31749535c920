"""Order preserving hierarchical clustering of partially ordered data.

Clusters the elements of an ordered similarity space into an oriented binary
tree that co-locates similar elements while keeping the induced order on
every flat level a partial order whenever the data allows it.
"""

from .poset import (
    CapacityError,
    Clustering,
    CrispRelation,
    OrderedSimilaritySpace,
    RelaxedOrder,
    Similarity,
    antisymmetrisation,
    dual_similarity,
    dual_split_value,
    dual_split_weight,
    indicator_sum,
    induced_relation,
    is_strict_partial_order,
    jmp,
    sep,
    split_value_alpha,
    split_value_f,
    transitive_closure,
)
from .trees import (
    BalancedSplit,
    Internal,
    Leaf,
    OrderedSplit,
    TreeNode,
    balanced_tree_split,
    cluster_graph_total,
    delta_goodness,
    flat_clustering_at,
    induced_tree,
    is_order_preserving,
    join_size,
    leaf_order,
    normalized_ultrametric,
    tree_symmetrised_weight,
    ultrametric,
)
from .objective import Objective, evaluate, join_size_total, value_decomposition
from .cuts import (
    CutResult,
    densest_cut_density,
    directed_cut_density,
    exact_directed_sparsest_cut,
    local_search_cut,
)
from .solvers import SolveResult, approximation_bound, exact_optimal_tree, make_tree
from .synth import (
    CopyPasteSpec,
    PlantedBipartiteSpec,
    PlantedTruth,
    concentration_bound,
    copy_paste_partition,
    delta_bound,
    planted_bipartite,
)
from .metrics import QualityReport, adjusted_rand, best_flat_by_ari, loops_measure, order_agreement
from .pareto import SolverConfig, SweepPoint, pareto_front, refine_alpha, sweep_alpha

__version__ = "0.1.0"
