#!/usr/bin/env python3
"""
compare.py — degreewise comparison Hⁿ(𝒰, μ∘F) ≅ Hⁿ(F(𝒰), μ) along a site morphism F.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_cover, pick_functor, pick_presheaf, setting  # noqa: E402
from workbench.sheaf import comparison_iso, is_sheaf, pullback_presheaf  # noqa: E402

MAX_DEGREE = 3


def run(doc, args):
    mu = pick_presheaf(doc, args)
    F = pick_functor(doc, args)
    cover = pick_cover(mu.site, args)
    N = setting(flag(args, "max_degree"), MAX_DEGREE)
    report = comparison_iso(cover, mu, F, N, bool(flag(args, "strict_membership")))
    sheaf = is_sheaf(mu).is_sheaf
    pulled_sheaf = is_sheaf(pullback_presheaf(mu, F)).is_sheaf
    data = {"presheaf": mu.name, "functor": F.name, "cover": cover.name, "max_degree": N,
            "sheaf": sheaf, "pulled_back_sheaf": pulled_sheaf, **report.as_dict()}
    ok = report.ok and (pulled_sheaf or not sheaf)
    return outcome(ok, data,
                   f"cochain maps are isomorphisms: {report.isomorphisms}",
                   f"commute with the differentials: {report.commutes}")
