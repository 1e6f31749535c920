import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ordclust import Internal, Leaf, OrderedSimilaritySpace

# State-to-state migration magnitudes, normalised to total 1; row = from,
# column = to.  Order: Az, Ca, Id, Nv, Or, Ut, Wa.
MIGRATION = np.array(
    [
        [0.000, 0.064, 0.006, 0.018, 0.014, 0.012, 0.022],
        [0.089, 0.000, 0.016, 0.072, 0.061, 0.033, 0.069],
        [0.004, 0.009, 0.000, 0.007, 0.011, 0.014, 0.020],
        [0.016, 0.065, 0.006, 0.000, 0.013, 0.008, 0.009],
        [0.008, 0.033, 0.013, 0.003, 0.000, 0.004, 0.052],
        [0.019, 0.016, 0.011, 0.006, 0.006, 0.000, 0.009],
        [0.025, 0.065, 0.016, 0.008, 0.039, 0.009, 0.000],
    ]
)
MIGRATION_LABELS = ("Az", "Ca", "Id", "Nv", "Or", "Ut", "Wa")

# Jaccard name dissimilarities for the seven-person ancestry example.
# 0 John F. Kennedy, 1 Joseph P., 2 Rose F., 3 Patrick J., 4 Mary A.,
# 5 John F. Fitzgerald, 6 Mary J. Fitzgerald.
KENNEDY_DISSIMILARITY = {
    (0, 1): 0.29, (0, 2): 0.31, (0, 3): 0.53, (0, 4): 0.53, (0, 5): 0.50, (0, 6): 0.63,
    (1, 2): 0.40, (1, 3): 0.50, (1, 4): 0.59, (1, 5): 0.62, (1, 6): 0.73,
    (2, 3): 0.61, (2, 4): 0.53, (2, 5): 0.65, (2, 6): 0.70,
    (3, 4): 0.44, (3, 5): 0.50, (3, 6): 0.47,
    (4, 5): 0.65, (4, 6): 0.56,
    (5, 6): 0.28,
}
# x is a descendant of y
KENNEDY_DESCENDANTS = [(0, y) for y in range(1, 7)] + [(1, 3), (1, 4), (2, 5), (2, 6)]


@pytest.fixture(scope="session")
def migration_space() -> OrderedSimilaritySpace:
    n = 7
    return OrderedSimilaritySpace.from_matrices(
        np.zeros((n, n)), MIGRATION, MIGRATION_LABELS
    )


@pytest.fixture(scope="session")
def kennedy_space() -> OrderedSimilaritySpace:
    n = 7
    sd = np.zeros((n, n))
    for (i, j), v in KENNEDY_DISSIMILARITY.items():
        sd[i, j] = sd[j, i] = v
    w = np.zeros((n, n))
    for x, y in KENNEDY_DESCENDANTS:
        w[x, y] = 1.0
    return OrderedSimilaritySpace.from_matrices(1.0 - sd, w)


@pytest.fixture()
def fig2_tree():
    """Five-element tree with leaf order [0, 4, 2, 1, 3] (one-based: 1 5 3 2 4)."""
    return Internal(
        Internal(Leaf(0), Leaf(4)),
        Internal(Leaf(2), Internal(Leaf(1), Leaf(3))),
    )
