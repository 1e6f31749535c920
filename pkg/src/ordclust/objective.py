"""Tree-level value and cost functions over ordered similarity spaces.

Every objective is a sum over leaf-order pairs x left of y of
``join_size(x, y) * w(x, y)`` for a per-kind pair weight w.  Value kinds are
maximised, cost kinds minimised; the two sides are linked by the exact
identities

    cost_gd(T) = (n^3 - n) / 3 - val_g(T)
    cost_fd(T) = 2 (n^3 - n) / 3 - val_f(T)

which both follow from the join-size total being tree independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poset import OrderedSimilaritySpace
from .trees import TreeNode, leaf_order, ultrametric

__all__ = [
    "Objective",
    "weight_matrix",
    "evaluate",
    "value_decomposition",
    "join_size_total",
]

_KINDS = {
    "val_f",
    "val_g",
    "val_sd",
    "val_alpha",
    "cost_s",
    "cost_gd",
    "cost_fd",
    "cost_alpha_dual",
}
_ALPHA_KINDS = {"val_alpha", "cost_alpha_dual"}


@dataclass(frozen=True)
class Objective:
    """A named pair-weight scheme; alpha kinds carry their mixing weight."""

    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown objective kind {self.kind!r}")
        if self.kind in _ALPHA_KINDS:
            if self.alpha is None or not 0.0 <= self.alpha <= 1.0:
                raise ValueError(f"{self.kind} needs alpha in [0, 1], got {self.alpha}")
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} takes no alpha")

    @staticmethod
    def val_f() -> "Objective":
        return Objective("val_f")

    @staticmethod
    def val_g() -> "Objective":
        return Objective("val_g")

    @staticmethod
    def val_sd() -> "Objective":
        return Objective("val_sd")

    @staticmethod
    def val_alpha(alpha: float) -> "Objective":
        return Objective("val_alpha", float(alpha))

    @staticmethod
    def cost_s() -> "Objective":
        return Objective("cost_s")

    @staticmethod
    def cost_gd() -> "Objective":
        return Objective("cost_gd")

    @staticmethod
    def cost_fd() -> "Objective":
        return Objective("cost_fd")

    @staticmethod
    def cost_alpha_dual(alpha: float) -> "Objective":
        return Objective("cost_alpha_dual", float(alpha))


def weight_matrix(space: OrderedSimilaritySpace, objective: Objective) -> np.ndarray:
    """The pair weight w(x, y) applied when x sits left of y; zero diagonal."""
    sd = space.dissimilarity_matrix()
    g = space.net_comparability_matrix()
    kind = objective.kind
    if kind == "val_f":
        w = sd + g
    elif kind == "val_g":
        w = g
    elif kind == "val_sd":
        w = sd
    elif kind == "val_alpha":
        a = objective.alpha
        w = a * sd + (1.0 - a) * g
    elif kind == "cost_s":
        w = 1.0 - sd
    elif kind == "cost_gd":
        w = 1.0 - g
    elif kind == "cost_fd":
        w = 2.0 - (sd + g)
    elif kind == "cost_alpha_dual":
        a = objective.alpha
        w = 1.0 - (a * sd + (1.0 - a) * g)
    else:  # pragma: no cover
        raise AssertionError(kind)
    np.fill_diagonal(w, 0.0)
    return w


def evaluate(space: OrderedSimilaritySpace, tree: TreeNode, objective: Objective) -> float:
    """Sum of join_size(x, y) * w(x, y) over pairs ordered by the leaf order."""
    n = space.n
    if tree.size != n or tree.members != (1 << n) - 1:
        raise ValueError("tree leaves must be exactly the space's elements")
    w = weight_matrix(space, objective)
    order = np.asarray(leaf_order(tree))
    sizes = ultrametric(tree) + 1
    wp = w[np.ix_(order, order)]
    sp = sizes[np.ix_(order, order)]
    iu = np.triu_indices(n, k=1)
    return float(np.sum(sp[iu].astype(float) * wp[iu]))


def value_decomposition(
    space: OrderedSimilaritySpace, tree: TreeNode, alpha: float
) -> tuple[float, float]:
    """(val_sd, val_g) of the tree; their alpha mix recovers val_alpha exactly."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    val_sd = evaluate(space, tree, Objective.val_sd())
    val_g = evaluate(space, tree, Objective.val_g())
    return val_sd, val_g


def join_size_total(n: int) -> int:
    """Tree-independent total of join sizes over all pairs: (n^3 - n) / 3."""
    if n < 1:
        raise ValueError("need at least one element")
    return (n**3 - n) // 3
