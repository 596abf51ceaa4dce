#!/usr/bin/env python3
"""
criterion.py — test σ: X → F(X) against the slice-equivalence criterion.

σ invertible forces base change and cobase change along σ to be
equivalences; in a balanced category the converse holds too. Without
--sigma every σ: X → F(X) is checked.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor, pick_morphism, pick_object  # noqa: E402
from workbench.limits import fixpoint_criterion  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    C = F.source
    X = pick_object(C, args)
    sigmas = [pick_morphism(C, args, "sigma")] if flag(args, "sigma") else list(C.hom(X, F.on_object(X)))
    rows = []
    for sigma in sigmas:
        rows.append({"sigma": sigma, **fixpoint_criterion(C, F, X, sigma).as_dict()})
    ok = all(r["consistent"] for r in rows)
    summary = [f"{r['sigma']}: iso={r['sigma_iso']} τ-equiv={r['tau_equiv']} s-equiv={r['s_equiv']}"
               for r in rows] or [f"no morphisms {X} → {F.on_object(X)}"]
    return outcome(ok, {"functor": F.name, "object": X, "rows": rows}, *summary)
