#!/usr/bin/env python3
"""
basechange.py — base change τ⁻¹(σ) and cobase change s⁻¹(σ) along σ: X → Y.

Both functors are reported with their equivalence verdicts.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import functor_maps, outcome, pick_category, pick_morphism  # noqa: E402
from workbench.fincat import validate_functor  # noqa: E402
from workbench.limits import base_change, cobase_change, is_equivalence  # noqa: E402


def run(doc, args):
    C = pick_category(doc, args)
    sigma = pick_morphism(C, args, "sigma")
    report = {"category": C.name, "sigma": sigma}
    ok = True
    for label, build in (("base_change", base_change), ("cobase_change", cobase_change)):
        F = build(C, sigma)
        laws = validate_functor(F)
        ok = ok and laws.ok
        report[label] = {**functor_maps(F), "laws": laws.as_dict(),
                         **is_equivalence(F).as_dict()}
    return outcome(ok, report,
                   f"base change is an equivalence: {report['base_change']['equivalence']}",
                   f"cobase change is an equivalence: {report['cobase_change']['equivalence']}")
