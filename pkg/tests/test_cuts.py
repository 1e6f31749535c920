import numpy as np
import pytest

from ordclust import (
    OrderedSplit,
    densest_cut_density,
    directed_cut_density,
    exact_directed_sparsest_cut,
    local_search_cut,
)
from ordclust.objective import Objective, weight_matrix
from ordclust.poset import CapacityError
from ordclust.synth import PlantedBipartiteSpec, planted_bipartite, random_space

from oracles import naive_directed_sparsest_cut


class TestDensity:
    def test_two_elements(self):
        w = np.array([[0, 0.4], [0.9, 0]])
        assert directed_cut_density(w, OrderedSplit((0,), (1,))) == pytest.approx(0.4)

    def test_uniform_weights(self):
        w = np.full((5, 5), 0.3)
        np.fill_diagonal(w, 0)
        for split in [OrderedSplit((0,), (1, 2, 3, 4)), OrderedSplit((0, 1), (2, 3, 4))]:
            assert directed_cut_density(w, split) == pytest.approx(0.3)

    def test_orientation_sensitivity(self):
        w = np.array([[0, 1.0], [0.0, 0]])
        assert directed_cut_density(w, OrderedSplit((0,), (1,))) == 1.0
        assert directed_cut_density(w, OrderedSplit((1,), (0,))) == 0.0


class TestExactCut:
    def test_two_elements_picks_lower_orientation(self):
        w = np.array([[0, 1.0], [0.2, 0]])
        result = exact_directed_sparsest_cut(w)
        assert result.split == OrderedSplit((1,), (0,))
        assert result.density == pytest.approx(0.2)
        assert result.evaluations == 2

    def test_matches_naive_enumeration(self):
        for seed in range(20):
            n = 2 + seed % 7
            space = random_space(n, seed=seed)
            w = weight_matrix(space, Objective.cost_alpha_dual(0.5))
            got = exact_directed_sparsest_cut(w)
            want_density, _, _ = naive_directed_sparsest_cut(w)
            assert got.density == pytest.approx(want_density, abs=1e-12)

    @pytest.mark.parametrize("n", [10, 12])
    def test_matches_naive_enumeration_larger(self, n):
        space = random_space(n, seed=31 + n)
        w = weight_matrix(space, Objective.cost_fd())
        got = exact_directed_sparsest_cut(w)
        want_density, _, _ = naive_directed_sparsest_cut(w)
        assert got.density == pytest.approx(want_density, abs=1e-12)

    def test_subset_of_elements(self):
        space = random_space(8, seed=44)
        w = weight_matrix(space, Objective.cost_fd())
        elements = [1, 3, 4, 6]
        got = exact_directed_sparsest_cut(w, elements)
        want_density, a, b = naive_directed_sparsest_cut(w, elements)
        assert got.density == pytest.approx(want_density, abs=1e-12)
        assert set(got.split.a) | set(got.split.b) == set(elements)

    def test_planted_noiseless_cut_is_the_blocks(self):
        spec = PlantedBipartiteSpec(n=6, p=1.0, q=0.0, seed=1)
        space, truth = planted_bipartite(spec)
        w = weight_matrix(space, Objective.cost_alpha_dual(0.5))
        result = exact_directed_sparsest_cut(w)
        assert result.split.a == truth.block_pair.a
        assert result.split.b == truth.block_pair.b
        assert result.density == pytest.approx(0.0)

    def test_capacity_error(self):
        w = np.zeros((23, 23))
        with pytest.raises(CapacityError):
            exact_directed_sparsest_cut(w)

    def test_too_small(self):
        with pytest.raises(ValueError):
            exact_directed_sparsest_cut(np.zeros((1, 1)))


class TestLocalSearch:
    def test_two_elements_is_exact(self):
        w = np.array([[0, 1.0], [0.2, 0]])
        result = local_search_cut(w, seed=0)
        assert result.density == pytest.approx(0.2)

    def test_never_beats_exact(self):
        for seed in range(15):
            space = random_space(7, seed=100 + seed)
            w = weight_matrix(space, Objective.cost_alpha_dual(0.3))
            exact = exact_directed_sparsest_cut(w)
            local = local_search_cut(w, seed=seed)
            assert local.density >= exact.density - 1e-12

    def test_quality_calibration_n10(self):
        # within 5% of the exact density on at least 90 of 100 seeded instances
        hits = 0
        for seed in range(100):
            space = random_space(10, seed=6000 + seed)
            w = weight_matrix(space, Objective.cost_alpha_dual(0.5))
            exact = exact_directed_sparsest_cut(w)
            local = local_search_cut(w, seed=seed)
            if local.density <= exact.density * 1.05 + 1e-12:
                hits += 1
        assert hits >= 90

    def test_deterministic_given_seed(self):
        space = random_space(9, seed=77)
        w = weight_matrix(space, Objective.cost_fd())
        first = local_search_cut(w, seed=5)
        second = local_search_cut(w, seed=5)
        assert first.split == second.split and first.density == second.density


class TestDensestDuality:
    def test_zero_weights(self):
        w = np.zeros((4, 4))
        split = OrderedSplit((0, 1), (2, 3))
        assert densest_cut_density(w, split) == 0.0
        assert directed_cut_density(2.0 - w, split) == pytest.approx(2.0)

    def test_split_identity(self):
        space = random_space(6, seed=9)
        f = weight_matrix(space, Objective.val_f())
        fd = weight_matrix(space, Objective.cost_fd())
        for split in [OrderedSplit((0,), (1, 2, 3, 4, 5)), OrderedSplit((0, 2, 4), (1, 3, 5))]:
            assert densest_cut_density(f, split) + directed_cut_density(fd, split) == pytest.approx(2.0)

    def test_argmin_dual_is_argmax_primal(self):
        import itertools

        space = random_space(6, seed=10)
        f = weight_matrix(space, Objective.val_f())
        fd = weight_matrix(space, Objective.cost_fd())
        elements = list(range(6))
        best_sparse, best_dense = None, None
        sparse_val, dense_val = np.inf, -np.inf
        for r in range(1, 6):
            for a in itertools.combinations(elements, r):
                b = tuple(e for e in elements if e not in a)
                split = OrderedSplit(a, b)
                sv = directed_cut_density(fd, split)
                dv = densest_cut_density(f, split)
                if sv < sparse_val - 1e-15:
                    sparse_val, best_sparse = sv, split
                if dv > dense_val + 1e-15:
                    dense_val, best_dense = dv, split
        assert best_sparse == best_dense
