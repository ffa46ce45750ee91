"""
Network ingestion, per-resource splitting and degree derivation.
"""

import logging
import math
from collections import OrderedDict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse

from ..exceptions import IngestError
from ..schemas.network import DegreeSummary, Edge, EdgeRow, Network, NetworkMode

logger = logging.getLogger(__name__)

RowLike = Union[EdgeRow, Sequence]


# ============================================================
# Row validation
# ============================================================

def _coerce_row(raw: RowLike, position: int) -> EdgeRow:
    """Turn a tuple / EdgeRow into an EdgeRow, remembering where it came from"""
    if isinstance(raw, EdgeRow):
        row = raw
    else:
        fields = tuple(raw)
        if not 2 <= len(fields) <= 4:
            raise IngestError(
                f"expected source, target[, weight[, resource]], got {len(fields)} fields",
                row=position,
            )
        row = EdgeRow(*fields)

    if row.line is None:
        row = row._replace(line=position)
    if row.source in (None, "") or row.target in (None, ""):
        raise IngestError("source and target identifiers are required", row=row.line)
    return row._replace(source=str(row.source), target=str(row.target))


def _weight_of(row: EdgeRow, mode: NetworkMode) -> float:
    if row.weight is None or row.weight == "":
        if mode is NetworkMode.TRADING:
            raise IngestError("trading rows need a weight", row=row.line)
        return 1.0
    try:
        weight = float(row.weight)
    except (TypeError, ValueError):
        raise IngestError(f"weight {row.weight!r} is not a number", row=row.line)
    if not math.isfinite(weight):
        raise IngestError(f"weight {row.weight!r} is not finite", row=row.line)
    if weight < 0:
        raise IngestError(f"negative weight {weight}", row=row.line)
    if mode is NetworkMode.WWW and weight != 1.0:
        raise IngestError(f"www links must have weight 1, got {weight}", row=row.line)
    return weight


# ============================================================
# Construction
# ============================================================

def build_network(
    vertex_ids: Iterable[str],
    edges: Iterable[Edge],
    mode: Union[NetworkMode, str] = NetworkMode.TRADING,
    name: str = "",
    resource: Optional[str] = None,
) -> Network:
    """
    Build a Network from an explicit vertex list and index-based edges.
    Parallel edges accumulate into a single adjacency entry.
    """
    mode = NetworkMode(mode)
    vertices = tuple(str(v) for v in vertex_ids)
    edges = tuple(edges)
    n = len(vertices)

    if edges:
        src = np.fromiter((e.source for e in edges), dtype=np.int64, count=len(edges))
        tgt = np.fromiter((e.target for e in edges), dtype=np.int64, count=len(edges))
        wgt = np.fromiter((e.weight for e in edges), dtype=float, count=len(edges))
    else:
        src = tgt = np.zeros(0, dtype=np.int64)
        wgt = np.zeros(0, dtype=float)

    adjacency = sparse.coo_matrix((wgt, (src, tgt)), shape=(n, n)).tocsr()
    adjacency.sum_duplicates()
    adjacency.eliminate_zeros()
    adjacency.sort_indices()

    return Network(
        vertices=vertices,
        adjacency=adjacency,
        mode=mode,
        edges=edges,
        name=name,
        resource=resource,
    )


def ingest_edge_list(
    rows: Iterable[RowLike],
    mode: Union[NetworkMode, str] = NetworkMode.TRADING,
    name: str = "",
) -> Network:
    """
    Build a Network from (source, target, weight[, resource]) rows.

    The vertex set is the union of all mentioned ids in first-appearance
    order. Negative weights are rejected in every mode; in www mode the
    weight must be 1 (or absent).
    """
    mode = NetworkMode(mode)
    index: "OrderedDict[str, int]" = OrderedDict()
    edges: List[Edge] = []
    resources = set()

    for position, raw in enumerate(rows, start=1):
        row = _coerce_row(raw, position)
        weight = _weight_of(row, mode)
        for vertex in (row.source, row.target):
            if vertex not in index:
                index[vertex] = len(index)
        edges.append(Edge(index[row.source], index[row.target], weight, row.resource))
        resources.add(row.resource)

    if not index:
        raise IngestError("no edges to ingest")

    resource = next(iter(resources)) if len(resources) == 1 else None
    network = build_network(index.keys(), edges, mode=mode, name=name, resource=resource)
    logger.debug(
        f"📊 Ingested {len(edges)} rows into {network.vertex_count} vertices "
        f"/ {network.edge_count} links ({mode.value})"
    )
    return network


def split_by_resource(
    rows: Iterable[RowLike],
    mode: Union[NetworkMode, str] = NetworkMode.TRADING,
) -> Dict[str, Network]:
    """One Network per resource label, each with only its own vertices"""
    grouped: "OrderedDict[str, List[EdgeRow]]" = OrderedDict()
    for position, raw in enumerate(rows, start=1):
        row = _coerce_row(raw, position)
        if row.resource in (None, ""):
            raise IngestError("missing resource label", row=row.line)
        grouped.setdefault(str(row.resource), []).append(row)

    networks = {
        label: ingest_edge_list(label_rows, mode=mode, name=label)
        for label, label_rows in grouped.items()
    }
    logger.info(f"✅ Split transactions into {len(networks)} resource networks")
    return networks


def export_edge_list(net: Network) -> List[Tuple]:
    """
    One row per nonzero L entry in row-major order. Re-ingesting the rows
    reproduces L exactly.
    """
    coo = net.adjacency.tocoo()
    order = np.lexsort((coo.col, coo.row))
    rows = []
    for k in order:
        row = (net.vertices[coo.row[k]], net.vertices[coo.col[k]], float(coo.data[k]))
        if net.resource is not None:
            row = row + (net.resource,)
        rows.append(row)
    return rows


# ============================================================
# Degrees
# ============================================================

def degree_summary(
    net: Network,
    weighted: bool = True,
    include_self_loops: bool = True,
) -> DegreeSummary:
    """
    Row / column sums of L. With ``weighted=False`` every linked ordered pair
    counts once; ranking operators pass ``include_self_loops=False``.
    """
    matrix = net.adjacency if include_self_loops else net.ranking_matrix()
    if not weighted:
        matrix = matrix.copy()
        matrix.data = np.ones_like(matrix.data)
    indeg = np.asarray(matrix.sum(axis=0), dtype=float).ravel()
    outdeg = np.asarray(matrix.sum(axis=1), dtype=float).ravel()
    return DegreeSummary(indeg=indeg, outdeg=outdeg)


def dataset_summary(net: Network) -> Tuple[int, int, float]:
    """(vertices, links, average total degree)"""
    n = net.vertex_count
    links = net.edge_count
    return n, links, (2.0 * links / n) if n else 0.0
