#!/usr/bin/env python3
"""
strict.py — objects with F(X) = X on the nose.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome, pick_functor  # noqa: E402
from workbench.fixpoint import fixed_points, strict_fixed_points  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    strict = strict_fixed_points(F)
    report = {"functor": F.name, "strict_fixed_points": list(strict),
              "fixed_point_objects": sorted({p.object for p in fixed_points(F)})}
    return outcome(True, report, f"strict fixed points of {F.name}: {', '.join(strict) or 'none'}")
