"""CSV series output with sidecar run manifests.

Values are written with shortest round-trip decimal rendering, so a reparsed
CSV reproduces the original binary doubles (and therefore the metrics)
bit for bit.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .engine import COLUMNS, Metrics, ScenarioResult, compute_metrics

CSV_HEADER = ",".join(COLUMNS)


def write_csv(result: ScenarioResult, destination) -> Path:
    """Write the full-precision series; returns the path written."""
    if len(result) == 0:
        raise ValueError("refusing to write an empty series")
    path = Path(destination)
    cols = result.columns()
    arrays = [cols[name] for name in COLUMNS]
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for i in range(len(result)):
                fh.write(",".join(repr(float(a[i])) for a in arrays) + "\n")
    except OSError as exc:
        raise OSError(f"writing series to {path}: {exc}") from exc
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    """Read a series written by :func:`write_csv` back into arrays."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        names = header.split(",")
        rows = [line.split(",") for line in fh if line.strip()]
    data = {
        name: np.array([float(row[j]) for row in rows])
        for j, name in enumerate(names)
    }
    return data


def build_manifest(
    result: ScenarioResult,
    config_dict: dict,
    label: str,
    csv_path,
    metrics: Metrics | None = None,
) -> dict:
    """Everything needed to reproduce and interpret one run."""
    if metrics is None:
        metrics = compute_metrics(result)
    return {
        "tool": "lockupsim",
        "version": __version__,
        "label": label,
        "config": config_dict,
        "backend": result.backend,
        "wall_time_s": result.wall_time,
        "termination": result.termination,
        "clamp_events": result.clamp_events,
        "ndob_enabled": result.ndob_enabled,
        "rows": len(result),
        "metrics": asdict(metrics),
        "outputs": [str(csv_path)],
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }


def write_manifest(manifest: dict, destination) -> Path:
    path = Path(destination)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"writing manifest to {path}: {exc}") from exc
    return path


def load_manifest(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
