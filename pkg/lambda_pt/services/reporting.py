"""
Deterministic CSV / JSON emission.

Floats are written with 17 significant digits, '.' as decimal separator and
'\\n' line endings, so identical inputs give byte-identical files.
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

import numpy as np

from lambda_pt.models.trajectory import Trajectory
from lambda_pt.services.evolve import populations

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]

TRAJECTORY_COLUMNS = [
    "t",
    "re_b1",
    "im_b1",
    "re_b2",
    "im_b2",
    "re_b3",
    "im_b3",
    "pop1",
    "pop2",
    "pop3",
    "frame",
]
POPULATION_COLUMNS = ["t", "pop1", "pop2", "pop3"]

Row = Dict[str, Any]


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return float(format_float(value))
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def render(rows: Sequence[Row], columns: Sequence[str], fmt: OutputFormat) -> str:
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
        return buffer.getvalue()
    if fmt == "json":
        payload = [{c: _json_value(row[c]) for c in columns} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"Unknown output format '{fmt}'.")


def emit(
    rows: Sequence[Row],
    columns: Sequence[str],
    fmt: OutputFormat = "csv",
    out: Optional[Path] = None,
) -> None:
    """Writes to ``out`` when given, else to stdout."""
    text = render(rows, columns, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    logger.info(f"Wrote {len(rows)} rows to {out}")


def trajectory_rows(traj: Trajectory) -> List[Row]:
    """
    One row per grid point. The amplitude columns hold b in the EffectiveB
    frame and C in the LabC frame; the ``frame`` column says which.
    """
    pops = populations(traj)
    rows = []
    for k, t in enumerate(traj.times):
        amp = traj.amplitudes[k]
        rows.append(
            {
                "t": float(t),
                "re_b1": float(amp[0].real),
                "im_b1": float(amp[0].imag),
                "re_b2": float(amp[1].real),
                "im_b2": float(amp[1].imag),
                "re_b3": float(amp[2].real),
                "im_b3": float(amp[2].imag),
                "pop1": float(pops[k, 0]),
                "pop2": float(pops[k, 1]),
                "pop3": float(pops[k, 2]),
                "frame": traj.frame.value,
            }
        )
    return rows


def population_rows(traj: Trajectory) -> List[Row]:
    pops = populations(traj)
    return [
        {"t": float(t), "pop1": float(p[0]), "pop2": float(p[1]), "pop3": float(p[2])}
        for t, p in zip(traj.times, pops)
    ]
