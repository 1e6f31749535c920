import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordclust import (
    Clustering,
    CrispRelation,
    Internal,
    Leaf,
    adjusted_rand,
    best_flat_by_ari,
    exact_optimal_tree,
    induced_relation,
    loops_measure,
    order_agreement,
)
from ordclust.synth import CopyPasteSpec, chain_order, copy_paste_partition, random_partial_order, random_tree

from oracles import pair_counting_ari


def clustering_from_labels(labels):
    return Clustering.from_labels(labels)


class TestAdjustedRand:
    def test_identical_partitions(self):
        c = clustering_from_labels([0, 0, 1, 2, 1])
        assert adjusted_rand(c, c) == 1.0

    def test_singletons_vs_one_block(self):
        a = clustering_from_labels([0, 1, 2, 3])
        b = clustering_from_labels([0, 0, 0, 0])
        assert adjusted_rand(a, b) == pytest.approx(0.0)

    def test_crossed_pairs(self):
        # {0,1},{2,3} against {0,2},{1,3}: frozen from the pair-counting oracle
        a = clustering_from_labels([0, 0, 1, 1])
        b = clustering_from_labels([0, 1, 0, 1])
        assert adjusted_rand(a, b) == pytest.approx(-0.5)
        assert pair_counting_ari([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(-0.5)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            adjusted_rand(clustering_from_labels([0, 1]), clustering_from_labels([0, 1, 2]))

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(0, 3), min_size=2, max_size=9),
        st.integers(0, 10_000),
    )
    def test_matches_pair_counting_and_symmetry(self, labels_a, seed):
        rng = np.random.default_rng(seed)
        labels_b = rng.integers(0, 3, size=len(labels_a)).tolist()
        a, b = clustering_from_labels(labels_a), clustering_from_labels(labels_b)
        got = adjusted_rand(a, b)
        assert got == pytest.approx(pair_counting_ari(labels_a, labels_b), abs=1e-12)
        assert got == pytest.approx(adjusted_rand(b, a), abs=1e-12)


class TestOrderAgreement:
    def test_identical_clusterings(self):
        r = random_partial_order(6, density=0.4, seed=0)
        c = clustering_from_labels([0, 0, 1, 1, 2, 2])
        assert order_agreement(r, c, c) == 1.0

    def test_two_element_merge_disagrees(self):
        r = CrispRelation.from_edges(2, [(0, 1)])
        truth = clustering_from_labels([0, 1])
        merged = clustering_from_labels([0, 0])
        assert order_agreement(r, truth, merged) == 0.0

    def test_empty_order_identical_clusterings(self):
        r = CrispRelation(np.zeros((4, 4), dtype=bool))
        c = clustering_from_labels([0, 1, 0, 1])
        assert order_agreement(r, c, c) == 1.0

    def test_partial_disagreement(self):
        r = CrispRelation.from_edges(3, [(0, 1)])
        truth = Clustering(((0,), (1,), (2,)))
        candidate = Clustering(((0, 2), (1,)))
        got = order_agreement(r, truth, candidate)
        assert 0.0 < got < 1.0


class TestLoops:
    def test_order_preserving_clustering(self):
        r = chain_order(4)
        c = Clustering(((0, 1), (2, 3)))
        assert loops_measure(r, c) == 1.0

    def test_cyclic_pairing_counts_all_elements(self):
        # a < b, c < d with clusters {a, d}, {b, c}
        r = CrispRelation.from_edges(4, [(0, 1), (2, 3)])
        c = Clustering(((0, 3), (1, 2)))
        assert loops_measure(r, c) == 0.0

    def test_singletons_of_a_partial_order(self):
        r = random_partial_order(7, density=0.5, seed=1)
        c = Clustering(tuple((i,) for i in range(7)))
        assert loops_measure(r, c) == 1.0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 7), st.integers(0, 10_000))
    def test_agrees_with_induced_relation_flag(self, n, seed):
        rng = np.random.default_rng(seed)
        r = random_partial_order(n, density=0.5, seed=seed)
        labels = rng.integers(0, max(1, n // 2), size=n).tolist()
        c = clustering_from_labels(labels)
        assert (loops_measure(r, c) == 1.0) == induced_relation(r, c).is_partial_order


class TestBestFlat:
    def test_exact_truth_level(self):
        tree = Internal(Internal(Leaf(0), Leaf(1)), Internal(Leaf(2), Leaf(3)))
        truth = Clustering(((0, 1), (2, 3)))
        order = CrispRelation(np.zeros((4, 4), dtype=bool))
        clustering, t, report = best_flat_by_ari(tree, truth, order)
        assert report.ari == 1.0
        assert {frozenset(b) for b in clustering.blocks} == {frozenset({0, 1}), frozenset({2, 3})}

    def test_singleton_truth_selects_zero(self):
        tree = random_tree(range(5), seed=3)
        truth = Clustering(tuple((i,) for i in range(5)))
        order = CrispRelation(np.zeros((5, 5), dtype=bool))
        _, t, report = best_flat_by_ari(tree, truth, order)
        assert t == 0.0 and report.ari == 1.0
        assert report.chosen_t == 0.0

    def test_copy_paste_instance_recovered_by_exact_solver(self):
        base = chain_order(2)
        spec = CopyPasteSpec(copies=1, mu=0.0, sigma2=1e-12, base_order=base, seed=5)
        space, truth = copy_paste_partition(spec)
        result = exact_optimal_tree(space, alpha=0.5)
        _, _, report = best_flat_by_ari(result.tree, truth.clustering, truth.order)
        assert report.ari == 1.0
        assert report.loops == 1.0
        assert report.delta_good == 0.0

    def test_delta_defaults_to_zero_without_comparable_pairs(self):
        tree = random_tree(range(4), seed=9)
        truth = Clustering(((0, 1), (2, 3)))
        order = CrispRelation(np.zeros((4, 4), dtype=bool))
        _, _, report = best_flat_by_ari(tree, truth, order)
        assert report.delta_good == 0.0
