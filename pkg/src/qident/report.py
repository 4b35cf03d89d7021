"""Report container and its text / JSON Lines / LaTeX renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .errors import ParseError
from .exactmath import parse_xpoly

FORMATS = ("text", "json", "latex")

# record fields holding canonical q/x expressions; rendered with \frac in LaTeX
EXPRESSION_FIELDS = {"residual", "value", "printed", "oracle", "closed_form"}


@dataclass
class Report:
    subcommand: str
    parameters: dict
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    version: str = __version__

    def header(self) -> dict:
        return {
            "tool": "qident",
            "version": self.version,
            "subcommand": self.subcommand,
            "parameters": self.parameters,
        }

    def record_dicts(self) -> list[dict]:
        return [r.to_record() if hasattr(r, "to_record") else dict(r) for r in self.records]


def _cell(value: Any) -> str:
    if isinstance(value, dict):
        return ",".join(f"{k}={_cell(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return "(" + ",".join(_cell(v) for v in value) + ")"
    if value is None:
        return "-"
    return str(value)


def _summary_lines(summary: dict, prefix: str = "") -> list[str]:
    out = []
    for k, v in summary.items():
        if isinstance(v, dict) and v and all(isinstance(x, dict) for x in v.values()):
            out.extend(_summary_lines(v, prefix))
        else:
            out.append(f"{prefix}{k}: {_cell(v)}")
    return out


def render_json(report: Report) -> str:
    lines = [json.dumps(report.header())]
    lines += [json.dumps(r) for r in report.record_dicts()]
    lines.append(json.dumps({"summary": report.summary}))
    return "\n".join(lines) + "\n"


def render_text(report: Report) -> str:
    params = " ".join(f"{k}={_cell(v)}" for k, v in report.parameters.items())
    lines = [f"# qident {report.version} {report.subcommand} {params}".rstrip()]
    rows = report.record_dicts()
    if rows:
        cols = list(rows[0])
        table = [cols] + [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    lines += ["# " + s for s in _summary_lines(report.summary)]
    return "\n".join(lines) + "\n"


def latex_expression(text: str) -> str:
    try:
        return parse_xpoly(text).latex()
    except ParseError:
        return latex_escape(text)


def latex_escape(text: str) -> str:
    for a, b in (("\\", r"\textbackslash{}"), ("_", r"\_"), ("&", r"\&"), ("%", r"\%"), ("#", r"\#")):
        text = text.replace(a, b)
    return text


def render_latex(report: Report) -> str:
    params = ", ".join(f"{k}={_cell(v)}" for k, v in report.parameters.items())
    lines = [f"% qident {report.version} {report.subcommand} {params}".rstrip()]
    rows = report.record_dicts()
    if rows:
        cols = list(rows[0])
        lines.append(r"\begin{tabular}{" + "l" * len(cols) + "}")
        lines.append(" & ".join(latex_escape(c) for c in cols) + r" \\")
        lines.append(r"\hline")
        for r in rows:
            cells = []
            for c in cols:
                v = r.get(c)
                if c in EXPRESSION_FIELDS and isinstance(v, str):
                    cells.append(f"${latex_expression(v)}$")
                else:
                    cells.append(latex_escape(_cell(v)))
            lines.append(" & ".join(cells) + r" \\")
        lines.append(r"\end{tabular}")
    lines += ["% " + s for s in _summary_lines(report.summary)]
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "latex":
        return render_latex(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
