#!/usr/bin/env python3
"""
homcolim.py — size of the colimit of i ↦ Hom(X, F(X_i)).

For a full endofunctor and a fixed-point object X the colimit is a single
point; that is the property checked. Other inputs are reported only.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome, pick_functor, pick_object  # noqa: E402
from workbench.fincat import is_full  # noqa: E402
from workbench.fixpoint import fixed_points, hom_colimit  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    C = F.source
    X = pick_object(C, args)
    report = hom_colimit(C, F, X)
    full = is_full(F)
    fixed = any(p.object == X for p in fixed_points(F))
    data = {"functor": F.name, "object": X, "full": full, "fixed_point_object": fixed,
            **report.as_dict()}
    passed = not (full and fixed) or report.size == 1
    return outcome(passed, data, f"colim Hom({X}, {F.name}(-)) has {report.size} element(s)")
