#!/usr/bin/env python3
"""
site_check.py — check the pretopology axioms: iso singletons, base change, composition.

Families are compared as sets of legs up to isomorphism of cones over
their target; --strict-membership compares morphism ids instead.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_site  # noqa: E402
from workbench.site import check_pretopology  # noqa: E402


def run(doc, args):
    P = pick_site(doc, args)
    strict = bool(flag(args, "strict_membership"))
    report = check_pretopology(P, strict)
    families = {obj: [f"{fam.name}: {', '.join(fam.legs) or '∅'}" for fam in fams]
                for obj, fams in sorted(P.items())}
    data = {"site": P.name, "strict_membership": strict, "families": families, **report.as_dict()}
    line = "pretopology axioms hold" if report.ok else f"{report.kind}: {report.message}"
    return outcome(report.ok, data, line)
