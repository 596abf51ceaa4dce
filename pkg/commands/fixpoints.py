#!/usr/bin/env python3
"""
fixpoints.py — list the fixed points (X, α) of an endofunctor.

A fixed point is an object X with an isomorphism α: X → F(X).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome, pick_functor  # noqa: E402
from workbench.fixpoint import fixed_points  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    points = fixed_points(F)
    report = {"functor": F.name,
              "fixed_points": [{"object": p.object, "iso": p.iso, "key": p.key} for p in points]}
    return outcome(True, report,
                   f"{len(points)} fixed point{'s' if len(points) != 1 else ''} of {F.name}",
                   *(p.key for p in points))
