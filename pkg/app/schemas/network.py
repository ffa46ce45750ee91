from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import sparse


class NetworkMode(str, Enum):
    # hyperlink graph, every link weight is 1
    WWW = "www"
    # transaction graph, link weights are prices / volumes
    TRADING = "trading"


class EdgeRow(NamedTuple):
    """One raw transaction / hyperlink record as read from input"""
    source: str
    target: str
    weight: Optional[float] = None
    resource: Optional[str] = None
    line: Optional[int] = None


class Edge(NamedTuple):
    source: int
    target: int
    weight: float
    resource: Optional[str] = None


@dataclass(frozen=True, eq=False)
class Network:
    """
    Immutable labeled, weighted directed graph snapshot.

    ``adjacency`` is the CSR matrix L: L[i, j] is the summed weight of all
    edges i -> j. ``edges`` keeps the accepted rows (internal indices) so the
    original multiset of transactions can be recovered. Vertex indices follow
    first-appearance order of the input.
    """
    vertices: Tuple[str, ...]
    adjacency: sparse.csr_matrix
    mode: NetworkMode
    edges: Tuple[Edge, ...] = ()
    name: str = ""
    resource: Optional[str] = None
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        if self.adjacency.shape != (n, n):
            raise ValueError(
                f"adjacency shape {self.adjacency.shape} does not match {n} vertices"
            )
        index = {vertex: i for i, vertex in enumerate(self.vertices)}
        if len(index) != n:
            raise ValueError("vertex identifiers must be unique")
        object.__setattr__(self, "_index", index)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        """Number of distinct ordered pairs carrying weight"""
        return int(self.adjacency.nnz)

    @property
    def total_weight(self) -> float:
        return float(self.adjacency.sum())

    def index_of(self, vertex_id: str) -> int:
        return self._index[vertex_id]

    def __contains__(self, vertex_id: object) -> bool:
        return vertex_id in self._index

    def ranking_matrix(self) -> sparse.csr_matrix:
        """L without self-loops; every ranking operator is built from this"""
        matrix = sparse.csr_matrix(
            self.adjacency - sparse.diags(self.adjacency.diagonal())
        )
        matrix.eliminate_zeros()
        return matrix

    def unweighted(self) -> "Network":
        """www-mode view: the nonzero pattern of L with unit weights"""
        pattern = self.adjacency.copy()
        pattern.data = np.ones_like(pattern.data)
        coo = pattern.tocoo()
        edges = tuple(
            Edge(int(i), int(j), 1.0, self.resource) for i, j in zip(coo.row, coo.col)
        )
        return Network(
            vertices=self.vertices,
            adjacency=pattern,
            mode=NetworkMode.WWW,
            edges=edges,
            name=self.name,
            resource=self.resource,
        )

    def rows(self) -> List[Tuple[str, str, float, Optional[str]]]:
        """The accepted transaction rows with external identifiers"""
        return [
            (self.vertices[e.source], self.vertices[e.target], e.weight, e.resource)
            for e in self.edges
        ]


@dataclass(frozen=True)
class DegreeSummary:
    indeg: np.ndarray
    outdeg: np.ndarray

    @property
    def deg(self) -> np.ndarray:
        return self.indeg + self.outdeg

    @property
    def size(self) -> int:
        return len(self.indeg)
