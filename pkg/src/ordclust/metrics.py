"""Clustering quality measures for planted-partition experiments.

The adjusted Rand index is the standard permutation-model (Hubert-Arabie)
variant.  ``order_agreement`` is a pair-classification agreement between the
induced block relations of two clusterings over the same ground order; it is
a defined stand-in, not the published element-wise order index, and report
output keeps its own name for that reason.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .poset import Clustering, CrispRelation, transitive_closure
from .trees import TreeNode, delta_goodness, flat_clustering_at

__all__ = [
    "QualityReport",
    "adjusted_rand",
    "order_agreement",
    "loops_measure",
    "best_flat_by_ari",
]


@dataclass(frozen=True)
class QualityReport:
    """Per-run quality of a tree against a planted truth."""

    ari: float
    order_agreement: float
    loops: float
    delta_good: float
    chosen_t: float

    def to_dict(self) -> dict:
        return asdict(self)


def adjusted_rand(a: Clustering, b: Clustering) -> float:
    """Hubert-Arabie adjusted Rand index; 1 for identical partitions."""
    if a.n != b.n:
        raise ValueError(f"clusterings are over different sizes: {a.n} vs {b.n}")
    n = a.n
    la, lb = a.block_of(), b.block_of()
    contingency = np.zeros((a.k, b.k), dtype=np.int64)
    np.add.at(contingency, (la, lb), 1)

    def comb2(x):
        return x * (x - 1) / 2.0

    total = comb2(n)
    if total == 0:
        return 1.0
    index = comb2(contingency).sum()
    sum_a = comb2(contingency.sum(axis=1)).sum()
    sum_b = comb2(contingency.sum(axis=0)).sum()
    expected = sum_a * sum_b / total
    maximum = (sum_a + sum_b) / 2.0
    if maximum == expected:
        return 1.0
    return float((index - expected) / (maximum - expected))


def _pair_categories(order: CrispRelation, clustering: Clustering) -> np.ndarray:
    """Code per ordered pair: same block, forward, backward, mutual, unrelated."""
    block_of = clustering.block_of()
    k = clustering.k
    projected = np.zeros((k, k), dtype=bool)
    xs, ys = np.nonzero(order.adjacency)
    bx, by = block_of[xs], block_of[ys]
    off = bx != by
    projected[bx[off], by[off]] = True
    closed = transitive_closure(CrispRelation(projected)).adjacency
    fwd = closed[block_of[:, None], block_of[None, :]]
    bwd = fwd.T
    same = block_of[:, None] == block_of[None, :]
    codes = np.where(same, 0, 1 * fwd + 2 * bwd + 4)
    return codes


def order_agreement(order: CrispRelation, truth: Clustering, candidate: Clustering) -> float:
    """Fraction of ordered pairs classified identically under both clusterings.

    Each pair is classified by the induced block relation as co-clustered,
    forward, backward, mutually related or unrelated; the ground order is
    shared and the clusterings are compared on the classification alone.
    """
    if truth.n != candidate.n or truth.n != order.n:
        raise ValueError("order and clusterings must agree on the element count")
    n = order.n
    if n < 2:
        return 1.0
    ct = _pair_categories(order, truth)
    cc = _pair_categories(order, candidate)
    off = ~np.eye(n, dtype=bool)
    return float((ct[off] == cc[off]).mean())


def loops_measure(r: CrispRelation, clustering: Clustering) -> float:
    """1 minus the fraction of elements whose block lies on an induced cycle.

    Cycles are read off the block digraph before closure via strongly
    connected components; 1 means the induced relation is a partial order.
    """
    if clustering.n != r.n:
        raise ValueError("clustering and relation are over different element counts")
    block_of = clustering.block_of()
    k = clustering.k
    projected = np.zeros((k, k), dtype=bool)
    xs, ys = np.nonzero(r.adjacency)
    bx, by = block_of[xs], block_of[ys]
    off = bx != by
    projected[bx[off], by[off]] = True
    n_comp, labels = connected_components(
        csr_matrix(projected), directed=True, connection="strong"
    )
    sizes = np.bincount(labels, minlength=n_comp)
    cyclic_blocks = sizes[labels] >= 2
    participants = sum(len(clustering.blocks[b]) for b in range(k) if cyclic_blocks[b])
    return 1.0 - participants / r.n


def best_flat_by_ari(
    tree: TreeNode, truth: Clustering, order: CrispRelation
) -> tuple[Clustering, float, QualityReport]:
    """Scan the tree's flat levels, keep the ARI-best one, report all measures.

    Ties prefer the lowest threshold.  The report's delta-goodness is taken
    against the ground order, with 0 when the order has no comparable pair.
    """
    n = tree.size
    best_clustering = None
    best_t = 0.0
    best_ari = -np.inf
    for t in range(n):
        clustering = flat_clustering_at(tree, t)
        score = adjusted_rand(truth, clustering)
        if score > best_ari + 1e-12:
            best_ari = score
            best_clustering = clustering
            best_t = float(t)
    if int(order.adjacency.sum()) == 0:
        delta = 0.0
    else:
        delta = delta_goodness(tree, order)
    report = QualityReport(
        ari=float(best_ari),
        order_agreement=order_agreement(order, truth, best_clustering),
        loops=loops_measure(order, best_clustering),
        delta_good=float(delta),
        chosen_t=best_t,
    )
    return best_clustering, best_t, report
