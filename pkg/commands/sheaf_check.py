#!/usr/bin/env python3
"""
sheaf_check.py — sheaf condition on every listed cover, and on the pullback along --functor.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor, pick_presheaves  # noqa: E402
from workbench.sheaf import is_sheaf, pullback_presheaf  # noqa: E402


def run(doc, args):
    site = doc.get("pretopologies", args.site) if flag(args, "site") else None
    F = pick_functor(doc, args) if flag(args, "functor") else None
    rows, ok = [], True
    for mu in pick_presheaves(doc, args, site):
        report = is_sheaf(mu)
        row = {"presheaf": mu.name, **report.as_dict()}
        if F is not None:
            pulled = is_sheaf(pullback_presheaf(mu, F))
            row["pulled_back"] = pulled.as_dict()
            ok = ok and (pulled.is_sheaf or not report.is_sheaf)
        ok = ok and report.is_sheaf
        rows.append(row)
    summary = [f"{r['presheaf']}: {'sheaf' if r['is_sheaf'] else 'not a sheaf'}" for r in rows]
    return outcome(ok, {"presheaves": rows}, *summary)
