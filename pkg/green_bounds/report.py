"""Text and JSON emission of reports.

JSON documents carry "schema": 1, the kind of report, a provenance field,
raw values with full precision and display strings rounded outward at three
significant figures. See docs/report_schema.md.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from .bounds.f_bound import FBoundResult
from .bounds.green_assembly import BoundReport, theorem_presentation
from .bounds.rounding import round_down_sig, round_up_sig
from .counting.point_counting import CountCertificate
from .errors import ConfigError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DISPLAY_DIGITS = 3
BOX_WIDTH = 78


def _up(x: float) -> str:
    return f"{round_up_sig(x, DISPLAY_DIGITS):g}"


def _down(x: float) -> str:
    return f"{round_down_sig(x, DISPLAY_DIGITS):g}"


def bound_values(report: BoundReport) -> Dict[str, float]:
    """Flat name -> raw value map of every constant of a bound report."""
    values = {"S": report.S, "r_delta": report.r_delta}
    for label, (t_eps, t_eps_prime) in report.T_by_cusp.items():
        values[f"T_eps[{label}]"] = t_eps
        values[f"T_eps_prime[{label}]"] = t_eps_prime
    for label, (a_tilde, b_tilde) in report.tilde_by_cusp.items():
        values[f"A_tilde[{label}]"] = a_tilde
        values[f"B_tilde[{label}]"] = b_tilde
    for name, interval in report.intervals().items():
        values[f"regime_{name}_lo"] = interval.lo
        values[f"regime_{name}_hi"] = interval.hi
    if report.int_h is not None:
        values["int_h_lo"] = report.int_h.lo
    for name, value in zip(("c0", "c1", "c2"), report.global_sup_polynomial):
        values[name] = value
    return values


def _display(values: Dict[str, float]) -> Dict[str, str]:
    # Lower endpoints round down, everything else is an upper bound
    return {name: (_down(v) if name.endswith("_lo") or name.startswith("A_tilde") else _up(v))
            for name, v in values.items()}


def bound_document(report: BoundReport) -> Dict[str, Any]:
    values = bound_values(report)
    document = {"schema": SCHEMA_VERSION, "kind": "bound_report", "provenance": report.provenance,
                "group": report.group, "level": report.level}
    document.update(values)
    document["display"] = _display(values)
    document["theorem"] = theorem_presentation(report.global_sup_polynomial)
    document["report"] = report.to_dict()
    return document


def count_document(certificate: CountCertificate, oracle_checked: int = 0) -> Dict[str, Any]:
    worst = certificate.worst_cell
    return {
        "schema": SCHEMA_VERSION,
        "kind": "count_certificate",
        "provenance": "computed",
        "threshold": certificate.threshold,
        "grid_step": certificate.grid_step,
        "certified_sup": certificate.certified_sup,
        "max_sample": certificate.max_sample,
        "cells": certificate.cells,
        "delta": certificate.delta,
        "worst_cell": [worst.x, worst.y] if worst is not None else None,
        "oracle_checked": oracle_checked,
    }


def fsup_document(result: FBoundResult, provenance: str) -> Dict[str, Any]:
    values = {"sup_Y": result.sup_Y, "sup_X": result.sup_X, "zeta": result.zeta}
    document = {"schema": SCHEMA_VERSION, "kind": "f_bound", "provenance": provenance,
                "a": result.a, "N_used": result.N_used}
    document.update(values)
    document["display"] = {k: _up(v) for k, v in values.items()}
    return document


def shc_document(a: float, s: float, k: float, values: Dict[str, float]) -> Dict[str, Any]:
    document = {"schema": SCHEMA_VERSION, "kind": "shc_transform", "provenance": "computed",
                "a": a, "s": s, "k": k}
    document.update(values)
    return document


def from_json(text: str) -> BoundReport:
    """Parse a bound report emitted by to_json."""
    data = json.loads(text)
    if data.get("schema") != SCHEMA_VERSION or data.get("kind") != "bound_report":
        raise ConfigError(f"not a schema {SCHEMA_VERSION} bound report")
    return BoundReport.from_dict(data["report"])


def to_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False)


class TextReport:
    """Boxed plain-text rendering of a report document."""

    def __init__(self, title: str):
        self.lines: List[str] = []
        self.lines.append(f"╔{'═' * BOX_WIDTH}╗")
        self.lines.append(f"║ {title:<{BOX_WIDTH - 1}}║")
        self.lines.append(f"╚{'═' * BOX_WIDTH}╝")

    def section(self, name: str) -> None:
        self.lines.append("")
        self.lines.append(f"{'─' * (BOX_WIDTH + 2)}")
        self.lines.append(name)
        self.lines.append(f"{'─' * (BOX_WIDTH + 2)}")

    def row(self, name: str, value: Any, display: Optional[str] = None) -> None:
        if isinstance(value, float):
            value = f"{value:.6g}"
        suffix = f"  (≤ {display})" if display is not None else ""
        self.lines.append(f"  {name:<24} {value}{suffix}")

    def finalize(self) -> str:
        self.lines.append("")
        self.lines.append("═" * (BOX_WIDTH + 2))
        return "\n".join(self.lines) + "\n"


def render_text(document: Dict[str, Any]) -> str:
    kind = document["kind"]
    text = TextReport(f"{kind.replace('_', ' ').upper()} ({document.get('provenance', '')})")
    if kind == "bound_report":
        text.section(f"Group {document['group']}")
        for name, value in document["report"]["inputs"].items():
            text.row(name, value)
        text.section("Constants and regimes")
        display = document["display"]
        for name, value in bound_values(BoundReport.from_dict(document["report"])).items():
            text.row(name, value, display.get(name) if not name.endswith("_lo") else None)
        text.section("Global bound")
        text.row("sup gr^can <=", document["theorem"]["statement"])
    else:
        skip = {"schema", "kind", "provenance", "display"}
        text.section("Values")
        for name, value in document.items():
            if name not in skip:
                text.row(name, value, document.get("display", {}).get(name))
    return text.finalize()


def emit(document: Dict[str, Any], output_format: str, path: Optional[str] = None) -> str:
    """Render a document, write it to path when given, and return the text."""
    if output_format == "json":
        rendered = to_json(document) + "\n"
    elif output_format == "text":
        rendered = render_text(document)
    else:
        raise ConfigError(f"unknown output format {output_format!r}")
    if path is not None:
        Path(path).write_text(rendered, encoding="utf-8")
        logger.info("Report written to %s", path)
    return rendered
