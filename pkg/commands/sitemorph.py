#!/usr/bin/env python3
"""
sitemorph.py — does an endofunctor preserve covers and commute with pullbacks?
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor, pick_site  # noqa: E402
from workbench.site import check_site_morphism  # noqa: E402


def run(doc, args):
    F, P = pick_functor(doc, args), pick_site(doc, args)
    report = check_site_morphism(F, P, bool(flag(args, "strict_membership")))
    line = (f"{F.name} is a morphism of {P.name}" if report.ok
            else f"{report.kind}: {report.message}")
    return outcome(report.ok, {"functor": F.name, "site": P.name, **report.as_dict()}, line)
