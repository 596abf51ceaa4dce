#!/usr/bin/env python3
"""
_render.py — text and JSON rendering of command outcomes.

Prefixed with _ so the command scanner skips it. JSON output is canonical
(sorted keys, fixed indentation) so identical inputs give identical bytes.
"""

import json

import yaml

MARKS = {"pass": "✓", "fail": "✗", "error": "⚠"}
SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def sup(n: int) -> str:
    return str(n).translate(SUPERSCRIPTS)


def group_text(invariants: list) -> str:
    """[0, 0, 2] → ℤ² ⊕ ℤ/2; [] → 0."""
    free = sum(1 for d in invariants if d == 0)
    parts = []
    if free:
        parts.append("ℤ" + (sup(free) if free > 1 else ""))
    parts += [f"ℤ/{d}" for d in invariants if d]
    return " ⊕ ".join(parts) or "0"


def payload(command: str, outcome, document: str = "") -> dict:
    data = {"command": command, "verdict": outcome.verdict, "report": outcome.report}
    if outcome.warnings:
        data["warnings"] = outcome.warnings
    if document:
        data["document"] = document
    return data


def render_json(command: str, outcome, document: str = "") -> str:
    return json.dumps(payload(command, outcome, document), indent=2, sort_keys=True,
                      ensure_ascii=False, default=str) + "\n"


def render_text(command: str, outcome, verbose: bool = True) -> str:
    lines = [f"{MARKS[outcome.verdict]} {command}: {outcome.verdict}"]
    lines += [f"  {s}" for s in outcome.summary]
    lines += [f"  ⚠ {w}" for w in outcome.warnings]
    if verbose and outcome.report:
        lines.append("")
        lines.append(yaml.dump(outcome.report, allow_unicode=True, default_flow_style=False,
                               sort_keys=False, indent=2).rstrip())
    return "\n".join(lines) + "\n"


def render_error(command: str, exc) -> str:
    return f"{MARKS['error']} {command}: {exc.kind}: {exc}\n"


def render_error_json(command: str, exc) -> str:
    return json.dumps({"command": command, "verdict": "error", "error": exc.as_dict()},
                      indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n"
