#!/usr/bin/env python3
"""
cech.py — Čech cohomology Hⁿ(𝒰, μ) of one covering family, degrees 0 … --max-degree.

The cover is named by --cover (unique across the site, or qualified with
--object).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_cover, pick_presheaf, setting  # noqa: E402
from _render import group_text, sup  # noqa: E402
from workbench.sheaf import cech_complex  # noqa: E402

MAX_DEGREE = 3


def run(doc, args):
    mu = pick_presheaf(doc, args)
    cover = pick_cover(mu.site, args)
    N = setting(flag(args, "max_degree"), MAX_DEGREE)
    if flag(args, "degree") is not None:
        N = max(N, args.degree)
    cx = cech_complex(cover, mu, N)
    degrees = [args.degree] if flag(args, "degree") is not None else list(range(N + 1))
    groups = {n: cx.cohomology(n).as_list() for n in degrees}
    report = {"site": mu.site.name, "presheaf": mu.name, "cover": cover.name,
              "object": cover.target, "legs": list(cover.legs), "max_degree": N,
              "cochain_ranks": [g.generators for g in cx.groups],
              "cohomology": [{"degree": n, "invariants": inv} for n, inv in groups.items()]}
    return outcome(True, report, *(f"H{sup(n)} = {inv}  ({group_text(inv)})" for n, inv in groups.items()))
