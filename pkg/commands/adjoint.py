#!/usr/bin/env python3
"""
adjoint.py — search for a unit and counit exhibiting L ⊣ R.

With --functor/--functor2 the pair is taken from the document. With
--sigma the two slice pairs along σ are checked: post-composition ⊣ base
change and cobase change ⊣ pre-composition.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_category, pick_functor, pick_morphism  # noqa: E402
from workbench.limits import base_change, check_adjunction, cobase_change, postcompose, precompose  # noqa: E402


def run(doc, args):
    if flag(args, "sigma") is None:
        L, R = pick_functor(doc, args), pick_functor(doc, args, "functor2")
        pairs = {f"{L.name} ⊣ {R.name}": (L, R)}
    else:
        C = pick_category(doc, args)
        sigma = pick_morphism(C, args, "sigma")
        pairs = {f"post({sigma}) ⊣ basechange({sigma})": (postcompose(C, sigma), base_change(C, sigma)),
                 f"cobasechange({sigma}) ⊣ pre({sigma})": (cobase_change(C, sigma), precompose(C, sigma))}
    report, summary, ok = {}, [], True
    for label, (L, R) in pairs.items():
        res = check_adjunction(L, R)
        report[label] = res.as_dict()
        summary.append(f"{label}: {'found' if res.found else 'none'}")
        ok = ok and res.found
    return outcome(ok, {"adjunctions": report}, *summary)
