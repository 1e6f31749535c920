import math

import numpy as np
import pytest

from ordclust import (
    Leaf,
    OrderedSimilaritySpace,
    approximation_bound,
    exact_optimal_tree,
    is_order_preserving,
    leaf_order,
    make_tree,
    ultrametric,
)
from ordclust.cuts import exact_directed_sparsest_cut
from ordclust.objective import Objective, evaluate, join_size_total, weight_matrix
from ordclust.poset import CapacityError
from ordclust.synth import (
    PlantedBipartiteSpec,
    planted_bipartite,
    random_partial_order,
    random_space,
)

from oracles import brute_force_optimum, enumerate_tree_values


def splits_of(tree):
    out = []

    def rec(node):
        if node.size == 1:
            return
        out.append((sorted(leaf_order(node.left)), sorted(leaf_order(node.right))))
        rec(node.left)
        rec(node.right)

    rec(tree)
    return out


class TestExactSolver:
    def test_two_elements_orientation(self):
        space = OrderedSimilaritySpace.from_matrices(
            [[0, 0.5], [0.5, 0]], [[0, 0.75], [0.25, 0]]
        )
        # f(0, 1) = 0.5 + 0.5 = 1, f(1, 0) = 0
        result = exact_optimal_tree(space, alpha=0.5)
        assert leaf_order(result.tree) == [0, 1]
        assert evaluate(space, result.tree, Objective.val_f()) == pytest.approx(2.0)

    def test_single_element(self):
        space = random_space(1, seed=0)
        result = exact_optimal_tree(space, alpha=0.3)
        assert result.tree == Leaf(0) and result.value == 0.0

    def test_capacity(self):
        space = random_space(15, seed=0)
        with pytest.raises(CapacityError):
            exact_optimal_tree(space, alpha=0.5)

    def test_alpha_validation(self):
        space = random_space(3, seed=0)
        with pytest.raises(ValueError):
            exact_optimal_tree(space, alpha=1.5)

    def test_migration_true_optimum(self, migration_space):
        result = exact_optimal_tree(migration_space, alpha=0.0)
        # independent literal enumeration of all oriented trees
        w = weight_matrix(migration_space, Objective.val_g())
        assert result.value == pytest.approx(brute_force_optimum(w), abs=1e-12)
        assert result.value == pytest.approx(0.815, abs=1e-12)
        labels = migration_space.labels
        assert [labels[i] for i in leaf_order(result.tree)] == [
            "Ca", "Id", "Nv", "Ut", "Az", "Or", "Wa",
        ]
        splits = splits_of(result.tree)
        assert splits[0] == ([1], [0, 2, 3, 4, 5, 6])  # Ca split off first
        assert splits[1] == ([0, 2, 3, 4, 5], [6])  # then Wa to the right
        again = exact_optimal_tree(migration_space, alpha=0.0)
        assert again.tree == result.tree

    def test_kennedy_reproduction(self, kennedy_space):
        result = exact_optimal_tree(kennedy_space, alpha=0.5)
        splits = splits_of(result.tree)
        assert splits[0] == ([0], [1, 2, 3, 4, 5, 6])
        assert splits[1] == ([1, 2], [3, 4, 5, 6])
        assert ([3, 4], [5, 6]) in splits
        # left/right orientation of the stated splits
        root = result.tree
        assert sorted(leaf_order(root.left)) == [0]
        inner = root.right
        assert sorted(leaf_order(inner.left)) == [1, 2]
        grand = inner.right
        assert sorted(leaf_order(grand.left)) == [3, 4]
        assert sorted(leaf_order(grand.right)) == [5, 6]

    @pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0])
    def test_oracle_equivalence_small(self, alpha):
        for seed in range(6):
            n = 2 + seed
            space = random_space(n, seed=900 + seed)
            w = weight_matrix(space, Objective.val_alpha(alpha))
            result = exact_optimal_tree(space, alpha=alpha)
            assert result.value == pytest.approx(brute_force_optimum(w), abs=1e-10)
            assert result.value == pytest.approx(result.stats["dp_value"], abs=1e-9)

    def test_order_only_optima_are_order_preserving(self):
        for seed in range(12):
            n = 3 + seed % 6
            relation = random_partial_order(n, density=0.4, seed=seed)
            space = OrderedSimilaritySpace.from_matrices(
                np.zeros((n, n)), relation.adjacency.astype(float)
            )
            result = exact_optimal_tree(space, alpha=0.0)
            ok, witness = is_order_preserving(result.tree, relation)
            assert ok, witness

    def test_value_duality_with_cost_side(self):
        # the val_f maximum determines the cost_fd minimum over all trees
        space = random_space(5, seed=31)
        f = weight_matrix(space, Objective.val_f())
        fd = weight_matrix(space, Objective.cost_fd())
        best_val = enumerate_tree_values(f).max()
        least_cost = enumerate_tree_values(fd).min()
        assert least_cost == pytest.approx(2 * join_size_total(5) - best_val, abs=1e-9)
        result = exact_optimal_tree(space, alpha=0.5)
        assert evaluate(space, result.tree, Objective.cost_fd()) == pytest.approx(
            least_cost, abs=1e-9
        )


class TestMakeTree:
    def test_single_leaf(self):
        space = random_space(1, seed=1)
        result = make_tree(space, alpha=0.5)
        assert result.tree == Leaf(0)

    def test_planted_noiseless_root_split(self):
        spec = PlantedBipartiteSpec(n=8, p=1.0, q=0.0, seed=3)
        space, truth = planted_bipartite(spec)
        result = make_tree(space, alpha=0.5, cut="exact")
        root = result.tree
        assert tuple(sorted(leaf_order(root.left))) == truth.block_pair.a
        assert tuple(sorted(leaf_order(root.right))) == truth.block_pair.b

    def test_never_better_than_exact(self):
        for seed in range(8):
            n = 3 + seed
            space = random_space(n, seed=500 + seed)
            opt = exact_optimal_tree(space, alpha=0.5)
            approx = make_tree(space, alpha=0.5, cut="exact")
            c_opt = evaluate(space, opt.tree, Objective.cost_fd())
            c_apx = evaluate(space, approx.tree, Objective.cost_fd())
            assert c_apx >= c_opt - 1e-9

    def test_local_cut_deterministic(self):
        space = random_space(9, seed=321)
        first = make_tree(space, alpha=0.4, cut="local", seed=7)
        second = make_tree(space, alpha=0.4, cut="local", seed=7)
        assert first.tree == second.tree

    def test_custom_cut_function(self):
        space = random_space(5, seed=8)
        calls = []

        def cut(w, elements):
            calls.append(tuple(elements))
            return exact_directed_sparsest_cut(w, elements)

        result = make_tree(space, alpha=0.5, cut=cut)
        assert result.cut_kind == "cut"
        assert calls and calls[0] == tuple(range(5))
        assert result.tree.size == 5

    def test_capacity_propagates(self):
        space = random_space(8, seed=9)
        with pytest.raises(CapacityError):
            make_tree(space, alpha=0.5, cut="exact", cut_limit=6)


class TestApproximationBound:
    def test_reference_points(self):
        assert approximation_bound(round(math.e**2)) == pytest.approx(
            27.0 * math.log(round(math.e**2)) / 2.0
        )
        assert approximation_bound(10) == pytest.approx(31.08489875541962, abs=1e-9)
        assert approximation_bound(10, 2.0) == pytest.approx(2 * approximation_bound(10))

    def test_validation(self):
        with pytest.raises(ValueError):
            approximation_bound(1)
        with pytest.raises(ValueError):
            approximation_bound(5, 0.5)


class TestIdempotency:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_recluster_reproduces_ultrametric(self, seed):
        n = 6
        space = random_space(n, seed=40 + seed)
        first = exact_optimal_tree(space, alpha=0.5)
        u = ultrametric(first.tree)
        order = leaf_order(first.tree)
        induced = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                induced[order[i], order[j]] = 1.0
        second_space = OrderedSimilaritySpace.from_matrices(1.0 - u / (n - 1), induced)
        second = exact_optimal_tree(second_space, alpha=0.5)
        assert np.array_equal(ultrametric(second.tree), u)
