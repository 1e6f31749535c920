"""Ordered similarity spaces and crisp partial-order utilities.

The central data model is a triple of an element set, a symmetric similarity
``s`` in [0, 1] and a relaxed order ``omega`` in [0, 1] on ordered pairs.
From these the pointwise split evidence functions are derived:

    net_comparability(x, y) = omega(x, y) - omega(y, x)       (in [-1, 1])
    dissimilarity(x, y)     = 1 - s(x, y)                     (in [0, 1])
    split_value(x, y)       = dissimilarity + net_comparability

Crisp relations (boolean digraphs) carry the exact partial-order machinery:
transitive closure, chain lengths and relations induced on clusterings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "CapacityError",
    "Similarity",
    "RelaxedOrder",
    "OrderedSimilaritySpace",
    "CrispRelation",
    "Clustering",
    "InducedRelation",
    "antisymmetrisation",
    "dual_similarity",
    "split_value_f",
    "split_value_alpha",
    "dual_split_value",
    "dual_split_weight",
    "transitive_closure",
    "has_cycle",
    "is_strict_partial_order",
    "indicator_sum",
    "jmp",
    "jmp_matrix",
    "sep",
    "sep_matrix",
    "induced_relation",
]


class CapacityError(RuntimeError):
    """An exact algorithm was asked for more elements than its configured limit."""


def _square_float(matrix, name: str) -> np.ndarray:
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def _check_unit_range(a: np.ndarray, name: str) -> None:
    off = ~np.eye(a.shape[0], dtype=bool)
    vals = a[off]
    if vals.size and (vals.min() < 0.0 or vals.max() > 1.0):
        raise ValueError(f"{name} entries must lie in [0, 1]")


@dataclass(frozen=True)
class Similarity:
    """Symmetric pairwise similarity in [0, 1]; the diagonal is unused."""

    s: np.ndarray

    def __post_init__(self):
        a = _square_float(self.s, "similarity")
        off = ~np.eye(a.shape[0], dtype=bool)
        if not np.array_equal(a[off], a.T[off]):
            raise ValueError("similarity must be symmetric off the diagonal")
        _check_unit_range(a, "similarity")
        np.fill_diagonal(a, 0.0)
        a.setflags(write=False)
        object.__setattr__(self, "s", a)

    @property
    def n(self) -> int:
        return self.s.shape[0]


@dataclass(frozen=True)
class RelaxedOrder:
    """Weights in [0, 1] on ordered pairs; the diagonal is unused.

    Interpreted as a family of random binary relations where the pair (x, y)
    is related with probability w[x, y].
    """

    w: np.ndarray

    def __post_init__(self):
        a = _square_float(self.w, "omega")
        _check_unit_range(a, "omega")
        np.fill_diagonal(a, 0.0)
        a.setflags(write=False)
        object.__setattr__(self, "w", a)

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class OrderedSimilaritySpace:
    """An element set with a similarity and a relaxed order on it."""

    similarity: Similarity
    omega: RelaxedOrder
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.similarity.n != self.omega.n:
            raise ValueError(
                f"similarity is {self.similarity.n}x{self.similarity.n} but "
                f"omega is {self.omega.n}x{self.omega.n}"
            )
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.similarity.n:
                raise ValueError("labels length must equal the element count")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_matrices(cls, s, w, labels=None) -> "OrderedSimilaritySpace":
        return cls(Similarity(s), RelaxedOrder(w), labels)

    @property
    def n(self) -> int:
        return self.similarity.n

    def dissimilarity_matrix(self) -> np.ndarray:
        """1 - s with a zero diagonal."""
        d = 1.0 - self.similarity.s
        np.fill_diagonal(d, 0.0)
        return d

    def net_comparability_matrix(self) -> np.ndarray:
        """Antisymmetric matrix w - w.T."""
        return self.omega.w - self.omega.w.T


def _check_distinct(x: int, y: int) -> None:
    if x == y:
        raise ValueError(f"pairwise function is undefined on the diagonal (x = y = {x})")


def antisymmetrisation(omega: RelaxedOrder, x: int, y: int) -> float:
    """Signed net comparability w(x, y) - w(y, x), in [-1, 1]."""
    _check_distinct(x, y)
    return float(omega.w[x, y] - omega.w[y, x])


def dual_similarity(similarity: Similarity, x: int, y: int) -> float:
    """The dissimilarity 1 - s(x, y)."""
    _check_distinct(x, y)
    return float(1.0 - similarity.s[x, y])


def split_value_f(space: OrderedSimilaritySpace, x: int, y: int) -> float:
    """Per-pair evidence for splitting x left of y: (1 - s) + (w(x,y) - w(y,x))."""
    return dual_similarity(space.similarity, x, y) + antisymmetrisation(space.omega, x, y)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def split_value_alpha(space: OrderedSimilaritySpace, alpha: float, x: int, y: int) -> float:
    """Convex combination alpha * (1 - s) + (1 - alpha) * net comparability."""
    alpha = _check_alpha(alpha)
    return alpha * dual_similarity(space.similarity, x, y) + (1.0 - alpha) * antisymmetrisation(
        space.omega, x, y
    )


def dual_split_value(space: OrderedSimilaritySpace, x: int, y: int) -> float:
    """2 - split_value_f, the nonnegative weight minimised by cost-side solvers."""
    return 2.0 - split_value_f(space, x, y)


def dual_split_weight(space: OrderedSimilaritySpace, alpha: float, x: int, y: int) -> float:
    """1 - split_value_alpha; nonnegative for every alpha in [0, 1].

    Equals alpha * s + (1 - alpha) * (1 - net comparability), so for the
    unweighted combination (alpha = 1/2) it is half of ``dual_split_value``.
    """
    return 1.0 - split_value_alpha(space, alpha, x, y)


@dataclass(frozen=True, eq=False)
class CrispRelation:
    """A boolean digraph on [0, n); stored irreflexively (diagonal false)."""

    adjacency: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, CrispRelation):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash(self.adjacency.tobytes())

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if np.diagonal(a).any():
            raise ValueError("relation must be stored irreflexively (diagonal false)")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CrispRelation":
        a = np.zeros((n, n), dtype=bool)
        for x, y in edges:
            a[x, y] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        xs, ys = np.nonzero(self.adjacency)
        return list(zip(xs.tolist(), ys.tolist()))

    def indicator(self) -> RelaxedOrder:
        """The relation as a 0/1 relaxed order."""
        return RelaxedOrder(self.adjacency.astype(float))


def _reachability(adjacency: np.ndarray) -> np.ndarray:
    """Floyd-Warshall boolean closure, including cycle self-reach on the diagonal."""
    reach = adjacency.copy()
    n = reach.shape[0]
    for k in range(n):
        reach |= np.outer(reach[:, k], reach[k, :])
    return reach


def transitive_closure(r: CrispRelation) -> CrispRelation:
    """Smallest transitive relation extending r; self-reach through cycles is stripped."""
    reach = _reachability(r.adjacency)
    np.fill_diagonal(reach, False)
    return CrispRelation(reach)


def has_cycle(r: CrispRelation) -> bool:
    """True iff r contains a directed cycle."""
    return bool(np.diagonal(_reachability(r.adjacency)).any())


def is_strict_partial_order(r: CrispRelation) -> bool:
    """True iff r is acyclic and equal to its own transitive closure."""
    reach = _reachability(r.adjacency)
    if np.diagonal(reach).any():
        return False
    np.fill_diagonal(reach, False)
    return bool(np.array_equal(reach, r.adjacency))


def indicator_sum(r: CrispRelation, a: Sequence[int], b: Sequence[int]) -> int:
    """Number of related ordered pairs in a x b."""
    a = np.asarray(a, dtype=int)
    b = np.asarray(b, dtype=int)
    if a.size == 0 or b.size == 0:
        return 0
    return int(r.adjacency[np.ix_(a, b)].sum())


def _topological_order(adjacency: np.ndarray) -> np.ndarray:
    n = adjacency.shape[0]
    indeg = adjacency.sum(axis=0).astype(int)
    order = []
    ready = [int(v) for v in np.flatnonzero(indeg == 0)]
    while ready:
        v = ready.pop()
        order.append(v)
        for w in np.flatnonzero(adjacency[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(int(w))
    if len(order) != n:
        raise ValueError("relation is cyclic, not a partial order")
    return np.asarray(order, dtype=int)


def jmp_matrix(r: CrispRelation) -> np.ndarray:
    """All-pairs maximal chain lengths, in jumps.

    ``out[x, y]`` is one less than the cardinality of a maximal chain from x
    up to y, and 0 when x does not reach y (or x = y).  The relation may be
    any acyclic digraph; the result depends only on its transitive closure.
    """
    adjacency = r.adjacency
    order = _topological_order(adjacency)
    n = r.n
    unreachable = -(1 << 40)  # far below any subtraction by path length
    longest = np.full((n, n), unreachable, dtype=np.int64)
    np.fill_diagonal(longest, 0)
    for u in order[::-1]:
        succ = np.flatnonzero(adjacency[u])
        if succ.size:
            best = (longest[succ] + 1).max(axis=0)
            longest[u] = np.maximum(longest[u], best)
    longest[longest < 0] = 0
    np.fill_diagonal(longest, 0)
    return longest


def jmp(r: CrispRelation, x: int, y: int) -> int:
    """Maximal chain length from x up to y, 0 if x does not precede y."""
    return int(jmp_matrix(r)[x, y])


def sep_matrix(r: CrispRelation) -> np.ndarray:
    """Elementwise max of jmp(x, y) and jmp(y, x): the ordered separation."""
    j = jmp_matrix(r)
    return np.maximum(j, j.T)


def sep(r: CrispRelation, x: int, y: int) -> int:
    """Ordered separation; 0 iff x = y or the pair is incomparable."""
    if x == y:
        return 0
    j = jmp_matrix(r)
    return int(max(j[x, y], j[y, x]))


@dataclass(frozen=True)
class Clustering:
    """A partition of [0, n) into disjoint, nonempty blocks."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in block) for block in self.blocks)
        seen: list[int] = []
        for block in blocks:
            if not block:
                raise ValueError("blocks must be nonempty")
            seen.extend(block)
        n = len(seen)
        if sorted(seen) != list(range(n)):
            raise ValueError("blocks must partition 0..n-1 without repeats")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Clustering":
        """Build from a block label per element; blocks ordered by first occurrence."""
        order: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            order.setdefault(int(lab), []).append(i)
        return cls(tuple(tuple(b) for b in order.values()))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_of(self) -> np.ndarray:
        out = np.empty(self.n, dtype=np.int64)
        for idx, block in enumerate(self.blocks):
            out[list(block)] = idx
        return out


class InducedRelation(NamedTuple):
    relation: CrispRelation
    is_partial_order: bool


def induced_relation(r: CrispRelation, clustering: Clustering) -> InducedRelation:
    """Block-level relation of a clustering: project edges, then close transitively.

    The flag reports whether the closure is a partial order on the blocks,
    i.e. whether the projected digraph is acyclic.
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
    reach = _reachability(projected)
    acyclic = not np.diagonal(reach).any()
    np.fill_diagonal(reach, False)
    return InducedRelation(CrispRelation(reach), acyclic)
