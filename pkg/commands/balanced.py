#!/usr/bin/env python3
"""
balanced.py — every morphism that is both mono and epi is an isomorphism.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome, pick_category  # noqa: E402
from workbench.limits import is_balanced, is_epi, is_mono  # noqa: E402


def run(doc, args):
    C = pick_category(doc, args)
    report = is_balanced(C)
    data = {"category": C.name, "balanced": report.balanced,
            "monos": [f for f in C.morphisms if is_mono(C, f)],
            "epis": [f for f in C.morphisms if is_epi(C, f)]}
    line = "balanced"
    if not report.balanced:
        data["witness"] = report.witness
        line = f"not balanced: {report.witness} is mono and epi but not invertible"
    return outcome(report.balanced, data, line)
