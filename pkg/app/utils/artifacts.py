# app/utils/artifacts.py
"""
Artifact writing: atomic file replacement, tabular output, run manifests.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import pandas as pd

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
MANIFEST_NAME = "manifest.json"


# ============================================================
# Atomic writes
# ============================================================

def atomic_write_text(path: PathLike, text: str) -> Path:
    """Write to a temp file in the target directory, then rename over the target"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def float_format(digits: int = 6, full_precision: bool = False) -> str:
    return "%.17g" if full_precision else f"%.{digits}g"


def write_frame(
    frame: pd.DataFrame,
    path: PathLike,
    output_format: str = "tsv",
    digits: int = 6,
    full_precision: bool = False,
    delimiter: str = "\t",
) -> Path:
    """
    Delimited table (tsv) or one JSON record per line (json). Floats carry
    ``digits`` significant digits unless ``full_precision``.
    """
    path = Path(path)
    if output_format == "json":
        formatted = frame.copy()
        if not full_precision:
            for column in formatted.select_dtypes(include="float").columns:
                formatted[column] = formatted[column].map(
                    lambda v: float(f"{v:.{digits}g}") if pd.notna(v) else None
                )
        text = formatted.to_json(orient="records", lines=True, force_ascii=False)
        if text and not text.endswith("\n"):
            text += "\n"
    else:
        text = frame.to_csv(
            sep=delimiter,
            index=False,
            float_format=float_format(digits, full_precision),
            lineterminator="\n",
        )
    atomic_write_text(path, text)
    logger.info(f"📁 Wrote {path}")
    return path


def artifact_name(stem: str, output_format: str) -> str:
    return f"{stem}.{'jsonl' if output_format == 'json' else 'tsv'}"


# ============================================================
# Manifests
# ============================================================

def file_digest(path: PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def input_digests(paths: Iterable[PathLike]) -> Dict[str, str]:
    digests = {}
    for path in paths:
        path = Path(path)
        if path.is_dir():
            for child in sorted(p for p in path.iterdir() if p.is_file()):
                digests[str(child)] = file_digest(child)
        else:
            digests[str(path)] = file_digest(path)
    return digests


def read_manifest(out_dir: PathLike) -> Optional[Dict[str, Any]]:
    path = Path(out_dir) / MANIFEST_NAME
    if not path.is_file():
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError):
        logger.warning(f"⚠️ Ignoring unreadable manifest {path}")
        return None


def check_previous_run(out_dir: PathLike, subcommand: str, digests: Dict[str, str]) -> bool:
    """
    Compare with the manifest of an earlier run in ``out_dir``; a changed
    input is reported before its artifacts get overwritten.
    """
    previous = read_manifest(out_dir)
    if not previous or previous.get("subcommand") != subcommand:
        return True
    old = previous.get("inputs", {})
    changed = sorted(p for p in set(old) | set(digests) if old.get(p) != digests.get(p))
    if changed:
        logger.warning(
            f"⚠️ Inputs changed since the last {subcommand} run in {out_dir}: "
            f"{', '.join(changed)}; overwriting its artifacts"
        )
        return False
    return True


def write_manifest(
    out_dir: PathLike,
    job: Dict[str, Any],
    digests: Dict[str, str],
    artifacts: List[Path],
) -> Path:
    """Resolved job + input digests + artifact list; key order is stable"""
    manifest = {
        **job,
        "inputs": dict(sorted(digests.items())),
        "artifacts": sorted(str(Path(a).name) for a in artifacts),
    }
    text = json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n"
    return atomic_write_text(Path(out_dir) / MANIFEST_NAME, text)
