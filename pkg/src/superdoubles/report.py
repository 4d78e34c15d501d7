"""Structured verification reports with a stable JSON schema.

Reports are deterministic: given the same catalog, seed and inputs, two
runs serialize byte-identically.  Wall-clock timing is therefore opt-in
(``timing_seconds`` stays null unless explicitly requested) so that it
never breaks reproducibility by default.

Schema (version 1)::

    {
      "schema_version": 1,
      "command": "<subcommand>",
      "catalog_version": "<12-hex digest of the catalog text>",
      "seed": <int>,
      "inputs": {...},
      "results": [
        {"name": str, "status": "pass"|"fail"|"disputed", "detail": str},
        ...
      ],
      "summary": {"pass": n, "fail": n, "disputed": n},
      "timing_seconds": null | float
    }

Field order is fixed as above.  Disputed catalog entries report their
status instead of failing; they never affect the exit code.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


def catalog_version(catalog) -> str:
    from .catalog import dump

    digest = hashlib.sha256(dump(catalog).encode("utf-8")).hexdigest()
    return digest[:12]


@dataclass
class Report:
    command: str
    inputs: dict
    catalog_version: str
    seed: int = 0
    results: list = field(default_factory=list)
    timing_seconds: float | None = None

    def add(self, name: str, passed: bool, detail: str = "", disputed: bool = False):
        status = "disputed" if disputed else ("pass" if passed else "fail")
        self.results.append({"name": name, "status": status, "detail": detail})

    def extend(self, other: "Report") -> None:
        self.results.extend(other.results)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "disputed": 0}
        for item in self.results:
            out[item["status"]] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "catalog_version": self.catalog_version,
            "seed": self.seed,
            "inputs": self.inputs,
            "results": self.results,
            "summary": self.summary,
            "timing_seconds": self.timing_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=True)

    def to_text(self) -> str:
        lines = [f"# {self.command}  (catalog {self.catalog_version})"]
        for item in self.results:
            mark = {"pass": "PASS", "fail": "FAIL", "disputed": "DISP"}[item["status"]]
            detail = f"  {item['detail']}" if item["detail"] else ""
            lines.append(f"[{mark}] {item['name']}{detail}")
        s = self.summary
        lines.append(
            f"summary: {s['pass']} passed, {s['fail']} failed, "
            f"{s['disputed']} disputed"
        )
        if self.timing_seconds is not None:
            lines.append(f"timing: {self.timing_seconds:.3f}s")
        return "\n".join(lines)
