"""Acceleration sweeps with stable, machine-readable output.

A sweep evaluates one :class:`~unruhsim.measures.MeasureRecord` per grid
point, left to right.  Everything is deterministic: there is no randomness
anywhere in the pipeline, so identical configurations produce byte-identical
output.  The CSV column order and the JSON field names are fixed and carry a
schema version.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError
from .fock import TruncationConfig
from .measures import MeasureRecord, measure_record

SCHEMA = "unruh-sweep/1"

CSV_COLUMNS = (
    "r",
    "fe_closed",
    "fe_kraus",
    "s_ar",
    "s_r",
    "s_a",
    "s_e",
    "mutual_info",
    "subadd_margin",
    "tail",
    "n_used",
)

OUTPUT_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SweepConfig:
    """Grid and policy for a sweep; defaults reproduce the full r in [0, 3] scan."""

    r_min: float = 0.0
    r_max: float = 3.0
    points: int = 200
    n_max: int = 256
    adaptive: bool = True
    abs_tol: float = 1e-10
    output_format: str = "csv"
    seedless: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r_min) and math.isfinite(self.r_max)):
            raise ConfigError("grid endpoints must be finite")
        if self.r_min < 0:
            raise ConfigError(f"r_min must be >= 0, got {self.r_min}")
        if not self.r_min < self.r_max:
            raise ConfigError(
                f"need r_min < r_max, got [{self.r_min}, {self.r_max}]"
            )
        if self.points < 2:
            raise ConfigError(f"points must be >= 2, got {self.points}")
        if self.n_max < 8:
            raise ConfigError(f"n_max must be >= 8, got {self.n_max}")
        if self.abs_tol <= 0:
            raise ConfigError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output_format must be one of {OUTPUT_FORMATS}, "
                f"got {self.output_format!r}"
            )
        if not self.seedless:
            raise ConfigError("randomized sweeps are not supported")

    def truncation(self) -> TruncationConfig:
        return TruncationConfig(n_max=self.n_max, abs_tol=self.abs_tol)


def r_grid(cfg: SweepConfig) -> np.ndarray:
    """Evenly spaced grid including both endpoints exactly."""
    return np.linspace(cfg.r_min, cfg.r_max, cfg.points)


def run_sweep(cfg: SweepConfig) -> list[MeasureRecord]:
    """One record per grid point, evaluated in increasing r."""
    trunc = cfg.truncation()
    return [measure_record(float(r), trunc, adaptive=cfg.adaptive) for r in r_grid(cfg)]


def _fmt(value: float) -> str:
    """Fixed 12-significant-digit scientific format."""
    return f"{value:.11e}"


def to_csv(records: list[MeasureRecord]) -> str:
    lines = [f"# schema: {SCHEMA}", ",".join(CSV_COLUMNS)]
    for rec in records:
        row = asdict(rec)
        cells = [
            str(row[col]) if col == "n_used" else _fmt(row[col])
            for col in CSV_COLUMNS
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def to_json(cfg: SweepConfig, records: list[MeasureRecord]) -> str:
    doc = {
        "schema": SCHEMA,
        "config": asdict(cfg),
        "rows": [
            {col: asdict(rec)[col] for col in CSV_COLUMNS} for rec in records
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def render(cfg: SweepConfig, records: list[MeasureRecord]) -> str:
    if cfg.output_format == "json":
        return to_json(cfg, records)
    return to_csv(records)
