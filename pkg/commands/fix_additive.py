#!/usr/bin/env python3
"""
fix_additive.py — additive structure on S(F) for an additive endofunctor F.

Checks the input enrichment, the additivity of F, then builds and checks
the enrichment of S(F).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor  # noqa: E402
from workbench.fixpoint import fix_category  # noqa: E402
from workbench.site import check_additive, check_additive_functor, fix_additive  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    E = doc.get("enrichments", flag(args, "enrichment"))
    data = {"functor": F.name, "enrichment": E.name}
    for label, report in (("enrichment", check_additive(E)),
                          ("functor", check_additive_functor(F, E))):
        data[label] = report.as_dict()
        if not report.ok:
            return outcome(False, data, f"{label} check failed: {report.kind}: {report.message}")
    SF = fix_category(F)
    lifted = fix_additive(F, E, SF)
    report = check_additive(lifted)
    data["fixed_points"] = len(SF.carrier.objects)
    data["biproducts"] = {f"{x},{y}": bp.object for (x, y), bp in sorted(lifted.biproducts.items())}
    data["lifted"] = report.as_dict()
    return outcome(report.ok, data,
                   f"S({F.name}) has {len(SF.carrier.objects)} objects and "
                   f"{len(lifted.biproducts)} biproducts; additive: {report.ok}")
