#!/usr/bin/env python3
"""
slice.py — the slice C/X and coslice X/C with their projection functors.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome, pick_category, pick_object  # noqa: E402
from workbench.fincat import validate_category  # noqa: E402
from workbench.limits import coslice_category, slice_category  # noqa: E402

SHOW_MORPHISMS = 1


def _describe(sl) -> dict:
    data = {"name": sl.carrier.name, "objects": list(sl.carrier.objects),
            "morphisms": len(sl.carrier.morphisms),
            "laws": validate_category(sl.carrier).as_dict()}
    if SHOW_MORPHISMS:
        data["triangles"] = [list(t) for t in sl.carrier.morphism_triples()]
    return data


def run(doc, args):
    C = pick_category(doc, args)
    X = pick_object(C, args)
    over, under = slice_category(C, X), coslice_category(C, X)
    report = {"category": C.name, "object": X, "slice": _describe(over), "coslice": _describe(under)}
    ok = report["slice"]["laws"]["ok"] and report["coslice"]["laws"]["ok"]
    return outcome(ok, report,
                   f"{over.carrier.name}: {len(over.carrier.objects)} objects",
                   f"{under.carrier.name}: {len(under.carrier.objects)} objects")
