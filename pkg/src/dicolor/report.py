"""Experiment reports and their CSV / JSON serialisation.

Schema (version 1)::

    {
      "schema_version": 1,
      "experiment": str,
      "parameters": {...},
      "trials": [{...}, ...],      # one flat record per trial
      "summary": {...},
      "asserted": [column, ...],   # deterministic guarantees, checked every run
      "observed": [column, ...],   # asymptotic claims, reported only
      "clamps": [str, ...],        # formula values clamped for small n
      "violations": [str, ...]     # failed asserted checks (CLI exits 2)
    }

The CSV has a header ``trial,<columns>``, one row per trial, and, when there
is at least one trial, a footer row ``#summary,<summary as JSON>``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict
    trials: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    asserted: list = field(default_factory=list)
    observed: list = field(default_factory=list)
    clamps: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentReport":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema_version')!r}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls.from_dict(json.loads(text))

    def columns(self) -> list[str]:
        cols: list[str] = []
        for rec in self.trials:
            for key in rec:
                if key not in cols:
                    cols.append(key)
        return cols

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = self.columns()
        writer.writerow(["trial", *cols])
        for i, rec in enumerate(self.trials):
            writer.writerow([i, *(_cell(rec.get(c)) for c in cols)])
        if self.trials:
            writer.writerow(["#summary", json.dumps(self.summary, sort_keys=True)])
        return buf.getvalue()

    def write(self, path) -> None:
        path = Path(path)
        if path.suffix == ".csv":
            path.write_text(self.to_csv())
        elif path.suffix == ".json":
            path.write_text(self.to_json())
        else:
            raise ValueError("report path must end in .csv or .json")


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, sort_keys=True)
    return value
