#!/usr/bin/env python3
"""
cofix.py — Čech-cohomological fixed point test for an object X under a site morphism F.

Over every cover of X and every test presheaf, Hⁿ(𝒰, μ) is compared with
Hⁿ(F(𝒰), μ) and with Hⁿ(𝒰, μ∘F). The verdict is relative to the chosen
presheaves and degree bound.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor, pick_object, pick_presheaves, setting  # noqa: E402
from workbench.sheaf import cech_fixed_point_report  # noqa: E402

MAX_DEGREE = 3


def run(doc, args):
    F = pick_functor(doc, args)
    site = doc.get("pretopologies", args.site) if flag(args, "site") else None
    presheaves = pick_presheaves(doc, args, site)
    X = pick_object(presheaves[0].base, args)
    N = setting(flag(args, "max_degree"), MAX_DEGREE)
    report = cech_fixed_point_report(X, F, presheaves, N, bool(flag(args, "strict_membership")))
    return outcome(report.declared and report.bridge_consistent,
                   {"functor": F.name, "presheaves": [mu.name for mu in presheaves], **report.as_dict()},
                   f"{X} is a Čech-cohomological fixed point of {F.name}: {report.declared}",
                   f"pulled-back and image cohomology agree: {report.bridge_consistent}")
