"""Report documents emitted by the CLI: table, JSON and CSV renderings.

JSON output is lossless: ``ReportDocument.from_json(doc.to_json())`` equals
``doc``.  Exact values are carried both as a rational string and a decimal
accurate to at least 15 significant digits.
"""

from __future__ import annotations

import io
import csv as csv_module
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional


def format_value(value) -> dict:
    """Render a result value as {'value': decimal, 'rational': str or None}."""
    if isinstance(value, Fraction) or isinstance(value, int):
        return {"value": float(value), "rational": str(Fraction(value))}
    return {"value": float(value), "rational": None}


@dataclass
class ReportDocument:
    command: str
    spec: dict
    requested: dict
    results: list
    extras: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    seed: Optional[int] = None
    version: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv_module.writer(buf)
        writer.writerow(["k", "value", "rational", "se", "method"])
        for row in self.results:
            writer.writerow([row.get("k", ""), row.get("value", ""),
                             row.get("rational") or "",
                             row.get("se", "") if row.get("se") is not None else "",
                             row.get("method", "")])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = ["%s report (spec kind=%s, arity=%s)"
                 % (self.command, self.spec.get("kind"), self.spec.get("arity"))]
        if self.seed is not None:
            lines.append("seed: %d" % self.seed)
        for key, value in sorted(self.requested.items()):
            lines.append("%s: %s" % (key, value))
        if self.results:
            lines.append("")
            lines.append("%4s  %22s  %18s  %12s  %s"
                         % ("k", "value", "rational", "se", "method"))
            for row in self.results:
                se = row.get("se")
                lines.append("%4s  %22.15g  %18s  %12s  %s"
                             % (row.get("k", ""), row.get("value", float("nan")),
                                row.get("rational") or "-",
                                ("%.3g" % se) if se is not None else "-",
                                row.get("method", "")))
        for key, value in sorted(self.extras.items()):
            lines.append("%s: %s" % (key, value))
        for warning in self.warnings:
            lines.append("warning: %s" % warning)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()
