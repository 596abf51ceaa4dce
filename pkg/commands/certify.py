#!/usr/bin/env python3
"""
certify.py — predict a strict fixed point from L(F) ≠ 0 or an initial object, then look for one.

With --transformation η: F → F', F' is certified too: it must share F's
Lefschetz number and the same prediction. F defaults to the source of η.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor  # noqa: E402
from workbench.nerve import strict_certificate  # noqa: E402


def run(doc, args):
    eta = doc.get("transformations", args.transformation) if flag(args, "transformation") else None
    F = eta.source if eta is not None and not flag(args, "functor") else pick_functor(doc, args)
    cert = strict_certificate(F, flag(args, "max_degree"), eta)
    summary = [f"L({F.name}) = {cert.lefschetz}, initial object: {'yes' if cert.has_initial else 'no'}",
               f"predicted: {'yes' if cert.prediction else 'no'}, "
               f"strict fixed points: {', '.join(cert.strict_fixed_points) or 'none'}"]
    if cert.companion is not None:
        other = cert.companion
        summary.append(f"L({other['functor']}) = {other['lefschetz']} along {eta.name}, "
                       f"strict fixed points: {', '.join(other['strict_fixed_points']) or 'none'}")
    return outcome(cert.consistent, {"functor": F.name, **cert.as_dict()}, *summary)
