# app/utils/edgelist.py
"""Edge-list and reserved-resource file parsing"""

import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from ..exceptions import IngestError
from ..schemas.network import EdgeRow, Network

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def guess_delimiter(path: PathLike, default: str = "\t") -> str:
    return "," if Path(path).suffix.lower() == ".csv" else default


def _records(path: Path, delimiter: str):
    """(line number, fields) for every non-blank, non-comment line"""
    with open(path, "rb") as handle:
        for line_no, raw in enumerate(handle, start=1):
            try:
                line = raw.decode("utf-8-sig" if line_no == 1 else "utf-8")
            except UnicodeDecodeError:
                raise IngestError(f"{path.name}: not valid UTF-8 text", row=line_no)
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = next(csv.reader([line.rstrip("\r\n")], delimiter=delimiter))
            yield line_no, [f.strip() for f in fields]


def read_edge_rows(path: PathLike, delimiter: Optional[str] = None) -> List[EdgeRow]:
    """
    Read ``source, target[, weight[, resource]]`` records.
    Errors carry the 1-based line number of the offending line.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"edge list not found: {path}")
    delimiter = delimiter or guess_delimiter(path)

    rows: List[EdgeRow] = []
    for line_no, fields in _records(path, delimiter):
        if not 2 <= len(fields) <= 4:
            raise IngestError(
                f"{path.name}: expected 2-4 fields, got {len(fields)}", row=line_no
            )
        source, target = fields[0], fields[1]
        weight = fields[2] if len(fields) > 2 and fields[2] != "" else None
        resource = fields[3] if len(fields) > 3 and fields[3] != "" else None
        rows.append(EdgeRow(source, target, weight, resource, line_no))

    logger.info(f"📁 Read {len(rows)} rows from {path}")
    return rows


def read_reserved(
    path: PathLike,
    net: Network,
    delimiter: Optional[str] = None,
) -> np.ndarray:
    """
    Reserved-resource amounts as a vector aligned with ``net.vertices``;
    vertices absent from the file hold nothing.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"reserved-resource file not found: {path}")
    delimiter = delimiter or guess_delimiter(path)

    amounts = np.zeros(net.vertex_count)
    for line_no, fields in _records(path, delimiter):
        if len(fields) != 2:
            raise IngestError(f"{path.name}: expected id and amount", row=line_no)
        vertex, raw_amount = fields
        if vertex not in net:
            raise IngestError(f"{path.name}: unknown vertex {vertex!r}", row=line_no)
        try:
            amount = float(raw_amount)
        except ValueError:
            raise IngestError(f"{path.name}: amount {raw_amount!r} is not a number", row=line_no)
        if amount < 0:
            raise IngestError(f"{path.name}: negative amount {amount}", row=line_no)
        amounts[net.index_of(vertex)] += amount
    return amounts


def format_edge_rows(rows: Iterable[Sequence], delimiter: str = "\t") -> str:
    """Edge rows as delimited text; weights keep full precision (repr)"""
    lines = []
    for row in rows:
        fields = [str(row[0]), str(row[1]), repr(float(row[2]))]
        if len(row) > 3 and row[3] is not None:
            fields.append(str(row[3]))
        lines.append(delimiter.join(fields))
    return "\n".join(lines) + ("\n" if lines else "")
