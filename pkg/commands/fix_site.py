#!/usr/bin/env python3
"""
fix_site.py — the pretopology induced on S(F) by a site morphism F.

Pullbacks in S(F) are built from base pullbacks; the induced families are
then checked against the pretopology axioms with those pullbacks.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor, pick_site  # noqa: E402
from workbench.fixpoint import fix_category  # noqa: E402
from workbench.site import check_pretopology, check_site_morphism, fix_pullback_fn, induced_fix_pretopology  # noqa: E402


def run(doc, args):
    F, P = pick_functor(doc, args), pick_site(doc, args)
    strict = bool(flag(args, "strict_membership"))
    morphism = check_site_morphism(F, P, strict)
    data = {"functor": F.name, "site": P.name, "site_morphism": morphism.as_dict()}
    if not morphism.ok:
        return outcome(False, data, f"{F.name} is not a site morphism: {morphism.message}")
    SF = fix_category(F)
    induced = induced_fix_pretopology(F, P, SF)
    report = check_pretopology(induced, strict, fix_pullback_fn(SF))
    data.update(induced=induced.name,
                families={obj: [list(fam.legs) for fam in fams] for obj, fams in sorted(induced.items())},
                axioms=report.as_dict())
    return outcome(report.ok, data,
                   f"{induced.name}: {sum(len(f) for _, f in induced.items())} families on "
                   f"{len(SF.carrier.objects)} fixed points")
