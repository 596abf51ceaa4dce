#!/usr/bin/env python3
"""
pullback.py — canonical pullback of a cospan f: A → X ← B: g.

The vertex is the least object (in sorted order) carrying a limiting cone;
the projections are the least such pair. With --left and --right the
unique factorization of that cone through the pullback is reported too.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_category, pick_morphism  # noqa: E402
from workbench.limits import is_pullback, pullback, pullback_factor  # noqa: E402


def run(doc, args):
    C = pick_category(doc, args)
    f, g = pick_morphism(C, args), pick_morphism(C, args, "morphism2")
    pb = pullback(C, f, g)
    report = {"category": C.name, "cospan": [f, g], "vertex": pb.vertex,
              "proj_left": pb.proj_left, "proj_right": pb.proj_right,
              "universal": is_pullback(C, f, g, pb),
              "provenance": "least vertex in object order, then least projection pair"}
    if flag(args, "left") and flag(args, "right"):
        left, right = pick_morphism(C, args, "left"), pick_morphism(C, args, "right")
        report["factor"] = {"cone": [left, right], "through": pullback_factor(C, pb, left, right)}
    return outcome(report["universal"], report,
                   f"{pb.vertex} with {pb.proj_left} → {C.dom(f)}, {pb.proj_right} → {C.dom(g)}")
