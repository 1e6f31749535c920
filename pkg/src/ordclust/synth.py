"""Random instance generators and the matching theoretical bound formulas.

Two planted families: the bipartite planted partial order (two hidden blocks
with noisy one-way comparability) and the copy-paste planted partition
(m noisy duplicates of a base ordered similarity space, the hidden clusters
being the copy classes).  Generators are pure functions of their spec and
seed; all randomness flows through counter-based Philox streams keyed by the
seed, so replicate generation is reproducible regardless of scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poset import Clustering, CrispRelation, OrderedSimilaritySpace, sep_matrix, transitive_closure
from .trees import Internal, Leaf, OrderedSplit, TreeNode

__all__ = [
    "PlantedBipartiteSpec",
    "CopyPasteSpec",
    "PlantedTruth",
    "planted_bipartite",
    "copy_paste_partition",
    "delta_bound",
    "concentration_bound",
    "chain_order",
    "random_partial_order",
    "similarity_from_order",
    "random_space",
    "random_tree",
    "random_linear_extension",
    "random_order_preserving_tree",
]

REJECTION_ROUNDS_CAP = 10**5

# Fixed stream tags so distinct generators never share a Philox stream.
_STREAMS = {
    "bpp": 1,
    "copypaste": 2,
    "poset": 3,
    "space": 4,
    "tree": 5,
    "linext": 6,
    "optree": 7,
}


def _rng(seed: int, stream: str) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed), _STREAMS[stream]])
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class PlantedTruth:
    """Ground truth of a planted instance."""

    clustering: Clustering
    order: CrispRelation
    block_pair: OrderedSplit | None = None


@dataclass(frozen=True)
class PlantedBipartiteSpec:
    n: int
    p: float
    q: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"n must be even and at least 2, got {self.n}")
        if not 0.0 <= self.q < self.p <= 1.0:
            raise ValueError(f"need 0 <= q < p <= 1, got p={self.p}, q={self.q}")


def planted_bipartite(
    spec: PlantedBipartiteSpec, similarity: float = 0.0
) -> tuple[OrderedSimilaritySpace, PlantedTruth]:
    """Sample a relaxed order over a hidden equal split (A*, B*).

    Every ordered pair gets weight 1 with probability p when the pair crosses
    A* -> B* and with probability q otherwise.  The similarity is the given
    constant on all pairs.
    """
    n = spec.n
    rng = _rng(spec.seed, "bpp")
    perm = rng.permutation(n)
    a_star = tuple(sorted(int(v) for v in perm[: n // 2]))
    b_star = tuple(sorted(int(v) for v in perm[n // 2 :]))
    below = np.zeros((n, n), dtype=bool)
    below[np.ix_(a_star, b_star)] = True
    prob = np.where(below, spec.p, spec.q)
    np.fill_diagonal(prob, 0.0)
    omega = (rng.random((n, n)) < prob).astype(float)
    np.fill_diagonal(omega, 0.0)
    if not 0.0 <= similarity <= 1.0:
        raise ValueError("similarity constant must lie in [0, 1]")
    s = np.full((n, n), float(similarity))
    space = OrderedSimilaritySpace.from_matrices(s, omega)
    truth = PlantedTruth(
        clustering=Clustering((a_star, b_star)),
        order=CrispRelation(below),
        block_pair=OrderedSplit(a_star, b_star),
    )
    return space, truth


@dataclass(frozen=True)
class CopyPasteSpec:
    """m noisy duplicates of a base ordered similarity space.

    The base order and similarity may be supplied; otherwise a random
    transitively closed DAG of ``base_n`` elements with the given edge
    probability is synthesised, with similarities derived from its ordered
    separations.
    """

    copies: int
    mu: float
    sigma2: float
    seed: int = 0
    base_n: int | None = None
    base_order: CrispRelation | None = None
    base_similarity: np.ndarray | None = None
    edge_probability: float = 0.3

    def __post_init__(self):
        if self.copies < 0:
            raise ValueError("number of copies must be nonnegative")
        if self.mu < 0:
            raise ValueError("noise location mu must be nonnegative")
        if self.sigma2 <= 0:
            raise ValueError(f"noise scale sigma2 must be positive, got {self.sigma2}")
        if self.base_order is None and self.base_n is None:
            raise ValueError("give either base_order or base_n")
        if self.base_order is not None and self.base_n is not None:
            if self.base_order.n != self.base_n:
                raise ValueError("base_n and base_order sizes disagree")


def copy_paste_partition(spec: CopyPasteSpec) -> tuple[OrderedSimilaritySpace, PlantedTruth]:
    """Duplicate the base, keep within-copy similarities, subtract noise across.

    A copy of element i shares nothing with other copies under the order
    (the union order keeps the copies incomparable), while its cross-copy
    similarities equal the base value minus a Normal(mu, sigma2) draw,
    rejection-sampled into [0, 1].  Copies of the same base element use a
    base value of 1.  The hidden clusters are the copy classes.
    """
    rng = _rng(spec.seed, "copypaste")
    base_order = spec.base_order
    if base_order is None:
        base_order = random_partial_order(spec.base_n, spec.edge_probability, rng=rng)
    else:
        base_order = transitive_closure(base_order)
    k = base_order.n
    if spec.base_similarity is not None:
        base_s = np.array(spec.base_similarity, dtype=float)
        if base_s.shape != (k, k):
            raise ValueError("base similarity shape does not match the base order")
    else:
        base_s = similarity_from_order(base_order)
    base_s = base_s.copy()
    np.fill_diagonal(base_s, 1.0)  # cross-copy value for copies of one element

    copies = spec.copies + 1
    n = k * copies
    order = np.zeros((n, n), dtype=bool)
    for j in range(copies):
        sl = slice(j * k, (j + 1) * k)
        order[sl, sl] = base_order.adjacency
    s = np.tile(base_s, (copies, copies))
    for j in range(copies):
        sl = slice(j * k, (j + 1) * k)
        s[sl, sl] = base_s
    np.fill_diagonal(s, 0.0)

    cross = ~np.kron(np.eye(copies, dtype=bool), np.ones((k, k), dtype=bool))
    iu = np.triu_indices(n, k=1)
    pick = cross[iu]
    targets = s[iu][pick]
    noise = np.zeros_like(targets)
    pending = np.ones(len(targets), dtype=bool)
    rounds = 0
    while pending.any():
        if rounds > REJECTION_ROUNDS_CAP:
            raise ValueError("rejection sampling did not converge; check mu and sigma2")
        draw = rng.normal(spec.mu, math.sqrt(spec.sigma2), size=int(pending.sum()))
        candidate = targets[pending] - draw
        ok = (candidate >= 0.0) & (candidate <= 1.0)
        accepted = np.flatnonzero(pending)[ok]
        noise[accepted] = draw[ok]
        pending[accepted] = False
        rounds += 1
    values = targets - noise
    out = s.copy()
    rows, cols = iu[0][pick], iu[1][pick]
    out[rows, cols] = values
    out[cols, rows] = values

    space = OrderedSimilaritySpace.from_matrices(out, order.astype(float))
    blocks = tuple(tuple(i + j * k for j in range(copies)) for i in range(k))
    truth = PlantedTruth(
        clustering=Clustering(blocks),
        order=CrispRelation(order),
    )
    return space, truth


def delta_bound(n: int, p: float, q: float, eps: float) -> float:
    """High-probability bound on the reversed-pair fraction of an optimal tree."""
    if n < 2:
        raise ValueError("bound is defined for n >= 2")
    if not 0.0 <= q < p <= 1.0:
        raise ValueError(f"need 0 <= q < p <= 1, got p={p}, q={q}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return (8.0 / (p - q)) * math.sqrt(
        2.0 * math.log(2 * n) / n + math.log(2.0 / eps) / n**2
    )


def concentration_bound(n: int, eps: float) -> float:
    """Deviation radius of the order-only tree value around its expectation."""
    if n < 1:
        raise ValueError("need at least one element")
    if not 0.0 < eps <= 2.0:
        raise ValueError(f"eps must lie in (0, 2], got {eps}")
    return n**2 * math.sqrt(2.0 * n * math.log(2 * n) + math.log(2.0 / eps))


def chain_order(k: int) -> CrispRelation:
    """The transitively closed chain 0 < 1 < ... < k-1."""
    adj = np.triu(np.ones((k, k), dtype=bool), 1)
    return CrispRelation(adj)


def random_partial_order(
    n: int, density: float = 0.3, seed: int = 0, rng: np.random.Generator | None = None
) -> CrispRelation:
    """Closure of a random DAG laid over a random linear extension."""
    if rng is None:
        rng = _rng(seed, "poset")
    perm = rng.permutation(n)
    adj = np.zeros((n, n), dtype=bool)
    upper = np.triu(rng.random((n, n)) < density, 1)
    xs, ys = np.nonzero(upper)
    adj[perm[xs], perm[ys]] = True
    return transitive_closure(CrispRelation(adj))


def similarity_from_order(
    r: CrispRelation, decay: float = 0.8, unrelated: float = 0.6
) -> np.ndarray:
    """Similarity falling off with ordered separation; flat between incomparable pairs."""
    s = sep_matrix(r).astype(float)
    out = np.where(s > 0, decay**s, unrelated)
    np.fill_diagonal(out, 0.0)
    return out


def random_space(
    n: int, seed: int = 0, rng: np.random.Generator | None = None
) -> OrderedSimilaritySpace:
    """Uniform random similarity and relaxed order; handy for property tests."""
    if rng is None:
        rng = _rng(seed, "space")
    s = rng.random((n, n))
    s = (s + s.T) / 2.0
    w = rng.random((n, n))
    return OrderedSimilaritySpace.from_matrices(s, w)


def random_tree(
    elements, seed: int = 0, rng: np.random.Generator | None = None
) -> TreeNode:
    """Uniformly random recursive oriented splits over the given elements."""
    if rng is None:
        rng = _rng(seed, "tree")
    elements = [int(e) for e in elements]
    if not elements:
        raise ValueError("a tree needs at least one element")

    def build(items: list[int]) -> TreeNode:
        if len(items) == 1:
            return Leaf(items[0])
        items = list(items)
        rng.shuffle(items)
        cut = int(rng.integers(1, len(items)))
        return Internal(build(items[:cut]), build(items[cut:]))

    return build(elements)


def random_linear_extension(
    r: CrispRelation, seed: int = 0, rng: np.random.Generator | None = None
) -> list[int]:
    """A random topological order of the relation."""
    if rng is None:
        rng = _rng(seed, "linext")
    adj = r.adjacency
    indeg = adj.sum(axis=0).astype(int)
    ready = [int(v) for v in np.flatnonzero(indeg == 0)]
    out: list[int] = []
    while ready:
        i = int(rng.integers(0, len(ready)))
        v = ready.pop(i)
        out.append(v)
        for w in np.flatnonzero(adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(int(w))
    if len(out) != r.n:
        raise ValueError("relation is cyclic, not a partial order")
    return out


def random_order_preserving_tree(
    r: CrispRelation, seed: int = 0, rng: np.random.Generator | None = None
) -> TreeNode:
    """Random tree whose leaf order is a random linear extension of the relation."""
    if rng is None:
        rng = _rng(seed, "optree")
    sequence = random_linear_extension(r, rng=rng)

    def build(seq: list[int]) -> TreeNode:
        if len(seq) == 1:
            return Leaf(seq[0])
        cut = int(rng.integers(1, len(seq)))
        return Internal(build(seq[:cut]), build(seq[cut:]))

    return build(sequence)
