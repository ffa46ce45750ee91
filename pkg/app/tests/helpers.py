"""Dense oracles and random graphs shared by the test modules"""

import numpy as np

from app.schemas.network import Edge, NetworkMode
from app.schemas.run_config import RunConfig
from app.services.graph import build_network

# tight enough that the iterate sits within ~1e-10 of the fixed point
ORACLE_CFG = RunConfig(tolerance=1e-13, max_iterations=200000)


# ============================================================
# Dense oracle helpers
# ============================================================

def dense_stochastic(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    out = np.empty_like(matrix, dtype=float)
    for i in range(n):
        total = matrix[i].sum()
        out[i] = matrix[i] / total if total > 0 else 1.0 / n
    return out


def dense_smooth(matrix: np.ndarray, zeta: float) -> np.ndarray:
    n = matrix.shape[0]
    return zeta * matrix + (1.0 - zeta) / n * np.ones((n, n))


def leading_left_vector(operator: np.ndarray) -> np.ndarray:
    """x with x·Op = lambda·x for the largest eigenvalue, 1-normalized"""
    values, vectors = np.linalg.eig(operator.T)
    top = np.argmax(values.real)
    vector = np.abs(vectors[:, top].real)
    return vector / vector.sum()


def dense_constants(matrix: np.ndarray):
    """(ca, ch) straight from the definition, one vertex at a time"""
    n = matrix.shape[0]
    ca, ch = np.zeros(n), np.zeros(n)
    for i in range(n):
        indeg = matrix[:, i].sum()
        outdeg = matrix[i, :].sum()
        deg = indeg + outdeg
        if deg == 0:
            continue
        gap = abs(indeg - outdeg)
        if np.isclose(indeg, outdeg, rtol=1e-12, atol=0):
            k = 1.0
        elif indeg > outdeg:
            k = gap
        else:
            k = 1.0 / gap
        ca[i] = indeg / deg * k
        ch[i] = outdeg / deg / k
    return ca, ch


def dense_links(net) -> np.ndarray:
    dense = net.adjacency.toarray()
    np.fill_diagonal(dense, 0.0)
    return dense


# ============================================================
# Random networks
# ============================================================

def random_network(seed: int, n: int = None, p: float = 0.5, weighted: bool = True, mode=None):
    """Random simple digraph; weights in [0.5, 3) when weighted, else 1"""
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(3, 11))
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    if not mask.any():
        mask[0, 1] = True
    weights = rng.uniform(0.5, 3.0, size=(n, n)) if weighted else np.ones((n, n))
    edges = [Edge(int(i), int(j), float(weights[i, j])) for i, j in zip(*np.nonzero(mask))]
    if mode is None:
        mode = NetworkMode.TRADING if weighted else NetworkMode.WWW
    return build_network((f"v{i}" for i in range(n)), edges, mode=mode, name=f"random-{seed}")




def permuted(net, order):
    """The same graph with vertex ``order[i]`` moved to index i"""
    position = np.empty(len(order), dtype=np.int64)
    position[np.asarray(order)] = np.arange(len(order))
    edges = [
        Edge(int(position[e.source]), int(position[e.target]), e.weight, e.resource)
        for e in net.edges
    ]
    return build_network(
        [net.vertices[i] for i in order], edges, mode=net.mode, name=net.name
    )


def by_label(ranking) -> dict:
    return dict(zip(ranking.vertices, ranking.scores))
