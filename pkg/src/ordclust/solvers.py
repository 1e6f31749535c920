"""Exact and approximate tree solvers.

``exact_optimal_tree`` maximises the alpha-mixed objective by dynamic
programming over element subsets: the best value of a set is the best over
its 2^k - 2 oriented splits of the split's contribution plus the children's
best values.  ``make_tree`` is the recursive approximation: cut the set with
a directed sparsest cut on the dual pair weights, recurse into the left and
right components, and join.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bitops import bits_of, pair_sums, popcounts, submasks_of
from .cuts import EXACT_CUT_LIMIT, CutResult, exact_directed_sparsest_cut, local_search_cut
from .objective import Objective, evaluate, weight_matrix
from .poset import CapacityError, OrderedSimilaritySpace
from .trees import Internal, Leaf, TreeNode

__all__ = [
    "SolveResult",
    "EXACT_TREE_LIMIT",
    "exact_optimal_tree",
    "make_tree",
    "approximation_bound",
]

EXACT_TREE_LIMIT = 14

CutFunction = Callable[[np.ndarray, Sequence[int]], CutResult]


@dataclass(frozen=True)
class SolveResult:
    tree: TreeNode
    value: float
    alpha: float
    solver: str
    cut_kind: str | None = None
    stats: dict = field(default_factory=dict)


def exact_optimal_tree(
    space: OrderedSimilaritySpace, alpha: float, limit: int = EXACT_TREE_LIMIT
) -> SolveResult:
    """Globally optimal tree under the alpha-mixed value, by subset DP.

    Cross-split weights split into a symmetric dissimilarity part, computed
    from precomputed within-mask pair sums, and an antisymmetric order part,
    which reduces to row sums against the enclosing set because it cancels
    within each component.  Ties prefer the lexicographically smallest left
    component, i.e. the smallest integer bitmask with element i at bit i.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    n = space.n
    if n > limit:
        raise CapacityError(f"exact solver is limited to {limit} elements, got {n}")
    started = time.perf_counter()
    if n == 1:
        tree: TreeNode = Leaf(0)
        return SolveResult(
            tree, 0.0, alpha, "exact", None, {"states": 1, "splits": 0, "seconds": 0.0}
        )

    sd = space.dissimilarity_matrix()
    g = space.net_comparability_matrix()
    sd_pairs = pair_sums(sd)
    sizes = popcounts(n)

    full = (1 << n) - 1
    value = np.zeros(1 << n)
    choice = np.zeros(1 << n, dtype=np.int64)
    split_count = 0
    for mask in range(3, full + 1):
        k = int(sizes[mask])
        if k < 2:
            continue
        bits = bits_of(mask)
        subs = submasks_of(mask, proper=True)
        rest = mask ^ subs
        spread = ((subs[:, None] >> np.array(bits)) & 1).astype(float)
        # order part: sum over a in A of g-row sums within the current mask
        g_rows = g[np.ix_(bits, bits)].sum(axis=1)
        cross_g = spread @ g_rows
        # grouping keeps totals bit-identical under (A, B) <-> (B, A) so that
        # orientation ties resolve by the smallest-mask rule, not fp noise
        cross_sd = sd_pairs[mask] - (sd_pairs[subs] + sd_pairs[rest])
        totals = k * (alpha * cross_sd + (1.0 - alpha) * cross_g) + (value[subs] + value[rest])
        best = int(np.argmax(totals))
        value[mask] = totals[best]
        choice[mask] = subs[best]
        split_count += len(subs)

    def rebuild(mask: int) -> TreeNode:
        if sizes[mask] == 1:
            return Leaf(bits_of(mask)[0])
        left = int(choice[mask])
        return Internal(rebuild(left), rebuild(mask ^ left))

    tree = rebuild(full)
    result_value = evaluate(space, tree, Objective.val_alpha(alpha))
    stats = {
        "states": 1 << n,
        "splits": split_count,
        "seconds": time.perf_counter() - started,
        "dp_value": float(value[full]),
    }
    return SolveResult(tree, result_value, alpha, "exact", None, stats)


def _cut_function(cut, seed, cut_limit: int, restarts: int) -> tuple[CutFunction, str]:
    if callable(cut):
        return cut, getattr(cut, "__name__", "custom")
    if cut == "exact":
        return (
            lambda w, elements: exact_directed_sparsest_cut(w, elements, limit=cut_limit),
            "exact",
        )
    if cut == "local":

        def local(w, elements):
            return local_search_cut(
                w, elements, seed=[seed, *elements], restarts=restarts
            )

        return local, "local"
    raise ValueError(f"unknown cut kind {cut!r}")


def make_tree(
    space: OrderedSimilaritySpace,
    alpha: float,
    cut: str | CutFunction = "exact",
    seed: int = 0,
    cut_limit: int = EXACT_CUT_LIMIT,
    restarts: int = 8,
) -> SolveResult:
    """Recursive sparsest-cut approximation of the optimal tree.

    Splits each set with a directed sparsest cut on the dual weights
    1 - (alpha * dissimilarity + (1 - alpha) * net comparability), recursing
    into the cut's components as left and right subtrees.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    started = time.perf_counter()
    dual = weight_matrix(space, Objective.cost_alpha_dual(alpha))
    cut_fn, cut_kind = _cut_function(cut, seed, cut_limit, restarts)
    evaluations = 0
    nodes = 0

    def build(elements: tuple[int, ...]) -> TreeNode:
        nonlocal evaluations, nodes
        nodes += 1
        if len(elements) == 1:
            return Leaf(elements[0])
        result = cut_fn(dual, elements)
        evaluations += result.evaluations
        return Internal(build(result.split.a), build(result.split.b))

    tree = build(tuple(range(space.n)))
    value = evaluate(space, tree, Objective.val_alpha(alpha)) if space.n > 1 else 0.0
    stats = {
        "nodes": nodes,
        "cut_evaluations": evaluations,
        "seconds": time.perf_counter() - started,
    }
    return SolveResult(tree, value, alpha, "approx", cut_kind, stats)


def approximation_bound(n: int, alpha_theta: float = 1.0) -> float:
    """Relative guarantee 27 * alpha_theta * ln(n) / 2 for the cut recursion.

    ``alpha_theta`` is the guarantee of the cut oracle (1 for an exact cut).
    Natural logarithm; a base-2 reading would only loosen the bound.
    """
    if n < 2:
        raise ValueError("bound is defined for n >= 2")
    if alpha_theta < 1.0:
        raise ValueError("a cut guarantee is at least 1")
    return 27.0 * alpha_theta * math.log(n) / 2.0
