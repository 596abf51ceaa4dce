#!/usr/bin/env python3
"""
exact.py — does pulling back along F keep a short exact sequence of presheaves exact?
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor  # noqa: E402
from workbench.sheaf import check_exactness_preserved  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    name = flag(args, "sequence")
    seq = doc.get("sequences", name)
    report = check_exactness_preserved(F, seq)
    i, p = seq
    data = {"functor": F.name, "sequence": [i.name, p.name], **report.as_dict()}
    line = ("exact after pullback" if report.preserved
            else f"not exact after pullback at {', '.join(report.failures)}")
    return outcome(report.preserved, data, line)
