"""Oriented binary trees over element sets.

A tree is a recursive ordered bipartition; left/right order is significant
and fixes a linear order on the leaves.  Node membership is cached as an int
bitmask so subset tests and split enumeration stay cheap at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .bitops import bits_of
from .poset import Clustering, CrispRelation, indicator_sum, transitive_closure

__all__ = [
    "TreeNode",
    "Leaf",
    "Internal",
    "OrderedSplit",
    "BalancedSplit",
    "leaf",
    "join",
    "iter_leaves",
    "iter_internal",
    "leaf_order",
    "leaf_positions",
    "join_size",
    "ultrametric",
    "normalized_ultrametric",
    "is_ultrametric_matrix",
    "flat_clustering_at",
    "is_order_preserving",
    "induced_tree",
    "tree_symmetrised_weight",
    "cluster_graph_total",
    "delta_goodness",
    "balanced_tree_split",
]


class TreeNode:
    __slots__ = ("members", "size")

    def __eq__(self, other):
        if isinstance(other, Leaf) and isinstance(self, Leaf):
            return self.element == other.element
        if isinstance(other, Internal) and isinstance(self, Internal):
            return self.left == other.left and self.right == other.right
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.members))


class Leaf(TreeNode):
    __slots__ = ("element",)

    def __init__(self, element: int):
        element = int(element)
        if element < 0:
            raise ValueError("elements are nonnegative indices")
        self.element = element
        self.members = 1 << element
        self.size = 1

    def __repr__(self):
        return f"Leaf({self.element})"


class Internal(TreeNode):
    __slots__ = ("left", "right")

    def __init__(self, left: TreeNode, right: TreeNode):
        if left.members & right.members:
            overlap = bits_of(left.members & right.members)
            raise ValueError(f"children must be disjoint, both contain {overlap}")
        self.left = left
        self.right = right
        self.members = left.members | right.members
        self.size = left.size + right.size

    def __repr__(self):
        return f"Internal({self.left!r}, {self.right!r})"


def leaf(element: int) -> Leaf:
    return Leaf(element)


def join(left: TreeNode, right: TreeNode) -> Internal:
    return Internal(left, right)


def iter_leaves(tree: TreeNode) -> Iterator[Leaf]:
    """Leaves in left-to-right order."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            yield node
        else:
            stack.append(node.right)
            stack.append(node.left)


def iter_internal(tree: TreeNode) -> Iterator[Internal]:
    """Internal nodes, root first."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, Internal):
            yield node
            stack.append(node.right)
            stack.append(node.left)


def leaf_order(tree: TreeNode) -> list[int]:
    """The linear order on elements induced by the tree's orientation."""
    return [lf.element for lf in iter_leaves(tree)]


def leaf_positions(tree: TreeNode) -> dict[int, int]:
    return {e: i for i, e in enumerate(leaf_order(tree))}


def _require_dense(tree: TreeNode) -> int:
    """Leaf set must be exactly 0..n-1; returns n."""
    n = tree.size
    if tree.members != (1 << n) - 1:
        raise ValueError(
            f"tree leaves must be exactly 0..{n - 1}, got {sorted(bits_of(tree.members))}"
        )
    return n


def join_size(tree: TreeNode, x: int, y: int) -> int:
    """Leaf count of the smallest subtree containing both x and y; 1 iff x = y."""
    pair = (1 << int(x)) | (1 << int(y))
    if pair & ~tree.members:
        raise ValueError(f"elements {x}, {y} are not both leaves of the tree")
    node = tree
    while isinstance(node, Internal):
        if pair & ~node.left.members == 0:
            node = node.left
        elif pair & ~node.right.members == 0:
            node = node.right
        else:
            break
    return node.size


def ultrametric(tree: TreeNode) -> np.ndarray:
    """Pairwise tree distances: size of the joining subtree minus one."""
    n = _require_dense(tree)
    d = np.zeros((n, n), dtype=np.int64)
    for node in iter_internal(tree):
        a = [lf.element for lf in iter_leaves(node.left)]
        b = [lf.element for lf in iter_leaves(node.right)]
        d[np.ix_(a, b)] = node.size - 1
        d[np.ix_(b, a)] = node.size - 1
    return d


def normalized_ultrametric(tree: TreeNode) -> np.ndarray:
    """Ultrametric scaled into [0, 1] by the maximal distance n - 1."""
    n = _require_dense(tree)
    if n < 2:
        raise ValueError("normalisation needs at least two elements")
    return ultrametric(tree) / float(n - 1)


def is_ultrametric_matrix(d: np.ndarray) -> bool:
    """Check symmetry, zero diagonal and d(x,z) <= max(d(x,y), d(y,z)) on all triples."""
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        return False
    if not np.allclose(d, d.T) or not np.allclose(np.diagonal(d), 0.0):
        return False
    if (d < -1e-12).any():
        return False
    # max over y of min(d[x,y], d[y,z]) is the tightest two-leg bound
    two_leg = np.min(np.maximum(d[:, :, None], d[None, :, :]), axis=1)
    return bool((d <= two_leg + 1e-9).all())


def flat_clustering_at(tree: TreeNode, t: float) -> Clustering:
    """Blocks of the equivalence u_T(x, y) <= t, as maximal subtrees of height <= t.

    A node is a block iff its own merge threshold (size - 1) is within t while
    its parent's is not.  Blocks come out in leaf order, so each block is an
    interval of the induced linear order.
    """
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")
    _require_dense(tree)
    blocks: list[tuple[int, ...]] = []

    def cut(node: TreeNode) -> None:
        if node.size - 1 <= t:
            blocks.append(tuple(lf.element for lf in iter_leaves(node)))
        else:
            cut(node.left)
            cut(node.right)

    cut(tree)
    return Clustering(tuple(blocks))


def is_order_preserving(
    tree: TreeNode, r: CrispRelation
) -> tuple[bool, tuple[int, int] | None]:
    """Whether every related pair x r y keeps x left of y in the tree.

    Equivalently no split reverses a comparable pair.  Returns the verdict and
    a witness pair (x, y) with x below y in the closure but y left of x.
    """
    n = _require_dense(tree)
    if r.n != n:
        raise ValueError("relation and tree are over different element counts")
    closed = transitive_closure(r)
    pos = leaf_positions(tree)
    xs, ys = np.nonzero(closed.adjacency)
    for x, y in zip(xs.tolist(), ys.tolist()):
        if pos[x] > pos[y]:
            return False, (x, y)
    return True, None


def induced_tree(tree: TreeNode, phi: Sequence[int]) -> TreeNode:
    """The isomorphic tree with every leaf mapped through the bijection phi."""
    phi = list(int(v) for v in phi)
    images = [phi[e] for e in leaf_order(tree)]
    if len(set(images)) != len(images):
        raise ValueError("phi must be injective on the tree's leaves")

    def rebuild(node: TreeNode) -> TreeNode:
        if isinstance(node, Leaf):
            return Leaf(phi[node.element])
        return Internal(rebuild(node.left), rebuild(node.right))

    return rebuild(tree)


def tree_symmetrised_weight(tree: TreeNode, omega, x: int, y: int) -> float:
    """Net comparability read in tree orientation: g(x, y) if x is left of y."""
    if x == y:
        raise ValueError("undefined on the diagonal")
    pos = leaf_positions(tree)
    if pos[x] <= pos[y]:
        return float(omega.w[x, y] - omega.w[y, x])
    return float(omega.w[y, x] - omega.w[x, y])


def cluster_graph_total(tree: TreeNode, omega) -> float:
    """Sum over unordered pairs of join size times orientation-consistent weight.

    Equals the order-only tree value; the per-pair weights are the edge
    weights of the complete graph this construction induces.
    """
    n = _require_dense(tree)
    if omega.n != n:
        raise ValueError("omega and tree are over different element counts")
    order = np.asarray(leaf_order(tree))
    g = omega.w - omega.w.T
    sizes = ultrametric(tree) + 1
    gp = g[np.ix_(order, order)]
    sp = sizes[np.ix_(order, order)]
    iu = np.triu_indices(n, k=1)
    return float(np.sum(sp[iu] * gp[iu]))


def delta_goodness(tree: TreeNode, r: CrispRelation) -> float:
    """Worst split's reversed-pair fraction against all comparable pairs.

    0 iff the tree is order preserving; undefined (raises) when the relation
    has no comparable pair at all.
    """
    n = _require_dense(tree)
    if r.n != n:
        raise ValueError("relation and tree are over different element counts")
    closed = transitive_closure(r)
    total = int(closed.adjacency.sum())
    if total == 0:
        raise ValueError("delta-goodness is undefined without comparable pairs")
    worst = 0
    for node in iter_internal(tree):
        a = [lf.element for lf in iter_leaves(node.left)]
        b = [lf.element for lf in iter_leaves(node.right)]
        worst = max(worst, indicator_sum(closed, b, a))
    return worst / total


@dataclass(frozen=True)
class OrderedSplit:
    """An oriented bipartition; (a, b) differs from (b, a)."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(i) for i in self.a)
        b = tuple(int(i) for i in self.b)
        if not a or not b:
            raise ValueError("both split components must be nonempty")
        if set(a) & set(b):
            raise ValueError("split components must be disjoint")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class BalancedSplit:
    """A balanced tree split together with its head sequence of path nodes."""

    split: OrderedSplit
    head: tuple[Internal, ...]


def balanced_tree_split(tree: TreeNode) -> BalancedSplit:
    """Split a tree along its maximum cardinality path into a bounded-density cut.

    Walk from the root, always descending into the larger child (ties go
    left), and collect the smaller child of each step as a left or right
    split-off depending on which side stays on the path.  Stop at the first
    step K where one accumulated split-off reaches n/3 elements; that side
    becomes one component and the rest of the leaves the other.

    The result keeps every pair ordered by the leaf order (a in A, b in B
    implies a left of b), its terminal path node holds at least n/3 leaves,
    and its dual-weight cut density is at most 27 / (2 n^3) times the tree's
    dual cost.
    """
    n = tree.size
    if n < 2:
        raise ValueError("a split needs at least two elements")
    head: list[Internal] = []
    left_off: list[TreeNode] = []
    right_off: list[TreeNode] = []
    size_a = 0
    size_b = 0
    node = tree
    while isinstance(node, Internal):
        head.append(node)
        if node.left.size < node.right.size:
            left_off.append(node.left)
            size_a += node.left.size
            node = node.right
        else:
            right_off.append(node.right)
            size_b += node.right.size
            node = node.left
        if max(size_a, size_b) * 3 >= n:
            break
    if max(size_a, size_b) * 3 < n:
        raise AssertionError("maximum cardinality path exhausted before reaching n/3")
    order = leaf_order(tree)
    if size_a * 3 >= n:
        a_mask = 0
        for off in left_off:
            a_mask |= off.members
        a = tuple(e for e in order if (a_mask >> e) & 1)
        b = tuple(e for e in order if not (a_mask >> e) & 1)
    else:
        b_mask = 0
        for off in right_off:
            b_mask |= off.members
        b = tuple(e for e in order if (b_mask >> e) & 1)
        a = tuple(e for e in order if not (b_mask >> e) & 1)
    return BalancedSplit(OrderedSplit(a, b), tuple(head))
