"""Alpha sweeps, Pareto dominance filtering and front refinement.

The two objective components are linear in the pair weights, so optima of
their convex combinations trace the whole Pareto front; a sweep evaluates a
grid of mixing weights and ``refine_alpha`` bisects for the region
boundaries where the optimal (val_sd, val_g) pair changes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .metrics import QualityReport, best_flat_by_ari
from .objective import Objective, evaluate
from .poset import CapacityError, OrderedSimilaritySpace
from .solvers import EXACT_TREE_LIMIT, exact_optimal_tree, make_tree
from .synth import PlantedTruth
from .trees import TreeNode

__all__ = ["SolverConfig", "SweepPoint", "sweep_alpha", "pareto_front", "refine_alpha"]

DEFAULT_GRID_SIZE = 50


@dataclass(frozen=True)
class SolverConfig:
    solver: str = "exact"
    cut: str = "exact"
    seed: int = 0
    exact_limit: int = EXACT_TREE_LIMIT
    cut_limit: int = 22
    restarts: int = 8

    def solve(self, space: OrderedSimilaritySpace, alpha: float, seed_offset: int = 0):
        if self.solver == "exact":
            return exact_optimal_tree(space, alpha, limit=self.exact_limit)
        if self.solver == "approx":
            return make_tree(
                space,
                alpha,
                cut=self.cut,
                seed=self.seed + seed_offset,
                cut_limit=self.cut_limit,
                restarts=self.restarts,
            )
        raise ValueError(f"unknown solver {self.solver!r}")


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    tree: TreeNode | None
    val_sd: float
    val_g: float
    val_alpha: float
    quality: QualityReport | None = None
    error: str | None = None


def default_grid(size: int = DEFAULT_GRID_SIZE) -> list[float]:
    if size < 1:
        raise ValueError("grid size must be positive")
    if size == 1:
        return [0.0]
    return [i / (size - 1) for i in range(size)]


def sweep_alpha(
    space: OrderedSimilaritySpace,
    grid,
    config: SolverConfig | None = None,
    truth: PlantedTruth | None = None,
) -> list[SweepPoint]:
    """One solver run per grid alpha; capacity failures are recorded, not raised."""
    grid = [float(a) for a in grid]
    if not grid:
        raise ValueError("alpha grid must be nonempty")
    if any(a < 0.0 or a > 1.0 for a in grid):
        raise ValueError("alpha grid must lie in [0, 1]")
    config = config or SolverConfig()
    points = []
    for i, alpha in enumerate(grid):
        try:
            result = config.solve(space, alpha, seed_offset=i)
        except CapacityError as exc:
            points.append(
                SweepPoint(alpha, None, float("nan"), float("nan"), float("nan"), None, str(exc))
            )
            continue
        val_sd = evaluate(space, result.tree, Objective.val_sd())
        val_g = evaluate(space, result.tree, Objective.val_g())
        quality = None
        if truth is not None:
            _, _, quality = best_flat_by_ari(result.tree, truth.clustering, truth.order)
        points.append(
            SweepPoint(alpha, result.tree, val_sd, val_g, result.value, quality)
        )
    return points


def pareto_front(points) -> list[SweepPoint]:
    """Points not dominated in (val_sd, val_g), sorted by val_sd ascending.

    Dominance is at-least-as-good on both components and strictly better on
    one.  Failed sweep points are ignored.
    """
    ok = [p for p in points if p.tree is not None]

    def dominated(p, q):
        return (
            q.val_sd >= p.val_sd
            and q.val_g >= p.val_g
            and (q.val_sd > p.val_sd or q.val_g > p.val_g)
        )

    front = [p for p in ok if not any(dominated(p, q) for q in ok)]
    return sorted(front, key=lambda p: (p.val_sd, p.val_g))


def refine_alpha(
    space: OrderedSimilaritySpace,
    lo: float = 0.0,
    hi: float = 1.0,
    tol: float = 1e-3,
    config: SolverConfig | None = None,
) -> list[float]:
    """Bisect for the alphas where the optimal (val_sd, val_g) pair changes.

    An interval is closed once both endpoints produce the same value pair,
    since the optimum is then constant across it; otherwise it is split until
    boundaries are bracketed to within ``tol``.
    """
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"need 0 <= lo < hi <= 1, got {lo}, {hi}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    config = config or SolverConfig()
    cache: dict[float, tuple[float, float]] = {}

    def pair(alpha: float) -> tuple[float, float]:
        if alpha not in cache:
            result = config.solve(space, alpha)
            cache[alpha] = (
                evaluate(space, result.tree, Objective.val_sd()),
                evaluate(space, result.tree, Objective.val_g()),
            )
        return cache[alpha]

    boundaries: list[float] = []

    def recurse(a: float, b: float, pa, pb) -> None:
        if pa == pb:
            return
        if b - a <= tol:
            boundaries.append((a + b) / 2.0)
            return
        mid = (a + b) / 2.0
        pm = pair(mid)
        recurse(a, mid, pa, pm)
        recurse(mid, b, pm, pb)

    recurse(lo, hi, pair(lo), pair(hi))
    return sorted(boundaries)
