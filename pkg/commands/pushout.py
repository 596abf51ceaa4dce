#!/usr/bin/env python3
"""
pushout.py — canonical pushout of a span f: X → A, g: X → B, computed as a pullback in Cᵒᵖ.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_category, pick_morphism  # noqa: E402
from workbench.limits import pushout, pushout_factor  # noqa: E402


def run(doc, args):
    C = pick_category(doc, args)
    f, g = pick_morphism(C, args), pick_morphism(C, args, "morphism2")
    po = pushout(C, f, g)
    report = {"category": C.name, "span": [f, g], "vertex": po.vertex,
              "inj_left": po.inj_left, "inj_right": po.inj_right,
              "provenance": "least vertex in object order, then least injection pair"}
    if flag(args, "left") and flag(args, "right"):
        left, right = pick_morphism(C, args, "left"), pick_morphism(C, args, "right")
        report["factor"] = {"cocone": [left, right], "through": pushout_factor(C, po, left, right)}
    return outcome(True, report,
                   f"{po.vertex} with {po.inj_left} from {C.cod(f)}, {po.inj_right} from {C.cod(g)}")
