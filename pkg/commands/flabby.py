#!/usr/bin/env python3
"""
flabby.py — vanishing of Čech cohomology in degrees 1 … --max-degree on every listed cover.

The verdict is degree-truncated: nothing is claimed above the bound.
With --functor the pullback μ∘F is checked as well.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor, pick_presheaf, setting  # noqa: E402
from workbench.sheaf import is_flabby, pullback_presheaf  # noqa: E402

MAX_DEGREE = 3


def run(doc, args):
    mu = pick_presheaf(doc, args)
    N = setting(flag(args, "max_degree"), MAX_DEGREE)
    report = is_flabby(mu, N)
    data = {"presheaf": mu.name, **report.as_dict()}
    ok = report.flabby
    summary = [f"{mu.name}: {'flabby' if report.flabby else 'not flabby'} up to degree {N}"]
    if flag(args, "functor"):
        F = pick_functor(doc, args)
        pulled = is_flabby(pullback_presheaf(mu, F), N)
        data["pulled_back"] = pulled.as_dict()
        ok = ok and pulled.flabby
        summary.append(f"{mu.name}∘{F.name}: {'flabby' if pulled.flabby else 'not flabby'}")
    return outcome(ok, data, *summary)
