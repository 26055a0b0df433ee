"""Machine-readable outputs: JSON report documents, scan CSV, SVG chart."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable

from . import __version__

SCHEMA_VERSION = 1
SIG_DIGITS = 12


def round_sig(obj, digits: int = SIG_DIGITS):
    """Round every float in a JSON-like tree to ``digits`` significant digits.

    Non-finite floats become ``None``. Idempotent, so rounded documents
    round-trip exactly.
    """
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, complex):
        return [round_sig(obj.real, digits), round_sig(obj.imag, digits)]
    if isinstance(obj, dict):
        return {str(k): round_sig(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_sig(v, digits) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return round_sig(obj.item(), digits)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(round_sig(obj), indent=2, sort_keys=False)


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class ReportDocument:
    command: str
    config: dict
    results: dict
    timestamps: dict = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return round_sig({
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "timestamps": self.timestamps,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(command=d["command"], config=d["config"], results=d["results"],
                   timestamps=d["timestamps"], tool_version=d["tool_version"],
                   schema_version=d["schema_version"])


def scan_csv(rows: Iterable) -> str:
    from .search import ScanRow

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ScanRow.CSV_COLUMNS)
    for r in rows:
        rec = round_sig(r.to_json())
        w.writerow(["" if rec[k] is None else rec[k] for k in ScanRow.CSV_COLUMNS])
    return buf.getvalue()


def scan_svg(rows, path, title: str = "") -> None:
    """Line chart of the bounds and the empirical maximum against alpha."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = list(rows)
    alpha = [r.alpha for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(alpha, [r.bound_paper for r in rows], label="published bound")
    if any(r.bound_corrected is not None for r in rows):
        ax.plot(alpha, [r.bound_corrected for r in rows], "--", label="corrected envelope")
    ax.plot(alpha, [r.empirical_max for r in rows], ".", label="empirical max")
    ax.set_xlabel("alpha")
    ax.set_ylabel("|a2 a4 - a3^2|")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
