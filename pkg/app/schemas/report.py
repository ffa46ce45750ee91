from pathlib import Path
from typing import Dict, List, Literal, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from .run_config import RunConfig

ITERATION_COLUMNS = (
    "hits_iterations",
    "hits_hub_iterations",
    "pagerank_iterations",
    "hits_accel_iterations",
    "traderank_iterations",
)


class BenchmarkRow(BaseModel):
    name: str
    vertices: int
    edges: int
    # None marks a cell that failed or did not converge
    hits_iterations: Optional[int] = Field(default=None, gt=0)
    hits_hub_iterations: Optional[int] = Field(default=None, gt=0)
    pagerank_iterations: Optional[int] = Field(default=None, gt=0)
    hits_accel_iterations: Optional[int] = Field(default=None, gt=0)
    traderank_iterations: Optional[int] = Field(default=None, gt=0)
    cosine: Optional[float] = Field(default=None, ge=0, le=1)
    spearman: Optional[float] = Field(default=None, ge=-1, le=1)
    notes: List[str] = Field(default_factory=list)


class BenchmarkReport(BaseModel):
    rows: List[BenchmarkRow] = Field(default_factory=list)

    def average(self) -> Dict[str, Optional[float]]:
        """Column means over datasets; cells that failed are skipped"""
        columns = ("vertices", "edges") + ITERATION_COLUMNS + ("cosine", "spearman")
        means: Dict[str, Optional[float]] = {}
        for column in columns:
            values = [getattr(r, column) for r in self.rows if getattr(r, column) is not None]
            means[column] = float(np.mean(values)) if values else None
        return means

    def to_frame(self) -> pd.DataFrame:
        records = [row.model_dump(exclude={"notes"}) for row in self.rows]
        for record, row in zip(records, self.rows):
            record["notes"] = "; ".join(row.notes)
        frame = pd.DataFrame.from_records(records)
        if self.rows:
            average = {"name": "Average", **self.average(), "notes": ""}
            frame = pd.concat([frame, pd.DataFrame([average])], ignore_index=True)
        return frame


class JobRecord(BaseModel):
    """One CLI invocation, recorded in the run manifest"""
    model_config = ConfigDict(extra="forbid")

    subcommand: Literal[
        "ingest", "generate", "rank", "analyze", "benchmark", "compare-convergence"
    ]
    inputs: List[Path] = Field(default_factory=list)
    config: RunConfig
    out_dir: Path
    output_format: Literal["tsv", "json"] = "tsv"
    full_precision: bool = False
