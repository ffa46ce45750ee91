import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional

import pandas as pd

from ..config import Settings
from ..schemas.network import Network, NetworkMode
from ..schemas.report import JobRecord
from ..schemas.run_config import RunConfig
from ..services.graph import ingest_edge_list
from ..utils.artifacts import artifact_name, write_frame
from ..utils.edgelist import read_edge_rows

logger = logging.getLogger(__name__)


@dataclass
class JobContext:
    """Everything a subcommand handler needs, plus what it produced"""
    job: JobRecord
    settings: Settings
    delimiter: str
    # None: guess from the file suffix
    input_delimiter: Optional[str] = None
    artifacts: List[Path] = field(default_factory=list)
    stage: str = "setup"

    @property
    def cfg(self) -> RunConfig:
        return self.job.config

    @property
    def out_dir(self) -> Path:
        return self.job.out_dir

    @contextmanager
    def step(self, name: str) -> Iterator[None]:
        self.stage = name
        logger.debug(f"▶️ {name}")
        yield

    def load_network(self, path: Path, mode: NetworkMode, name: str = "") -> Network:
        with self.step(f"loading {path}"):
            rows = read_edge_rows(path, delimiter=self.input_delimiter)
            return ingest_edge_list(rows, mode=mode, name=name or Path(path).stem)

    def write(self, frame: pd.DataFrame, stem: str) -> Path:
        with self.step(f"writing {stem}"):
            path = write_frame(
                frame,
                self.out_dir / artifact_name(stem, self.job.output_format),
                output_format=self.job.output_format,
                digits=self.settings.SIGNIFICANT_DIGITS,
                full_precision=self.job.full_precision,
                delimiter=self.delimiter,
            )
        self.artifacts.append(path)
        return path

    def record(self, path: Path) -> Path:
        self.artifacts.append(Path(path))
        return Path(path)
