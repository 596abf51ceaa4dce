#!/usr/bin/env python3
"""
lefschetz.py — Lefschetz number of the map a loop-free endofunctor induces on its nerve.

Chain-level and homology-level alternating traces are both computed and
must agree.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, pick_functor  # noqa: E402
from workbench.nerve import lefschetz_report  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    report = lefschetz_report(F, flag(args, "max_degree"))
    return outcome(True, {"functor": F.name, **report.as_dict()},
                   f"L({F.name}) = {report.number}")
