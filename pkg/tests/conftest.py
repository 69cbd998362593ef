import math

import numpy as np
import pytest

from relaydeploy import (
    BackboneGraph, GridSpec, ObjectiveContext, SeedLayout, enumerate_candidates, mst_backbone,
)

# Ten-node, twelve-link example backbone (1-indexed in the drawing).
FIG_EDGES_1 = [
    (1, 2), (1, 6), (1, 7), (2, 3), (3, 4), (3, 8),
    (4, 5), (5, 8), (5, 10), (6, 7), (8, 9), (9, 10),
]
FIG_LAPLACIAN = np.array([
    [3, -1, 0, 0, 0, -1, -1, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, -1, 3, -1, 0, 0, 0, -1, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, -1, 3, 0, 0, -1, 0, -1],
    [-1, 0, 0, 0, 0, 2, -1, 0, 0, 0],
    [-1, 0, 0, 0, 0, -1, 2, 0, 0, 0],
    [0, 0, -1, 0, -1, 0, 0, 3, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 0, 0, 0, -1, 2],
], dtype=np.int64)
# second-smallest eigenvalue of FIG_LAPLACIAN from scipy.linalg.eigh
FIG_FIEDLER = 0.17643628918201634
# networkx.wiener_index on the same graph
FIG_WIENER_BFS = 123.0

SMALL_GRID = GridSpec((6, 6, 2), 100.0, 100.0 * math.sqrt(2.0))
SMALL_LAYOUT = SeedLayout(
    (2, 2, 0),
    ((1, 1, 0), (3, 3, 0), (1, 3, 1), (3, 1, 1), (2, 2, 1), (0, 2, 0), (4, 2, 0), (2, 0, 1), (2, 4, 1)),
)


@pytest.fixture
def fig_graph():
    return BackboneGraph.from_edges(10, [(u - 1, v - 1) for u, v in FIG_EDGES_1])


@pytest.fixture(scope="session")
def small_backbone():
    return mst_backbone(SMALL_LAYOUT, SMALL_GRID)


@pytest.fixture(scope="session")
def eight_choose_two(small_backbone):
    """8 candidates, 2 relays to place: small enough to enumerate."""
    cands = enumerate_candidates(small_backbone, SMALL_GRID, 8)
    return ObjectiveContext(small_backbone, cands, SMALL_GRID, 2)


@pytest.fixture(scope="session")
def medium_ctx(small_backbone):
    cands = enumerate_candidates(small_backbone, SMALL_GRID, 20)
    return ObjectiveContext(small_backbone, cands, SMALL_GRID, 5)


class Sphere:
    dim = 10

    def __call__(self, x):
        return float(np.sum(np.asarray(x) ** 2))
