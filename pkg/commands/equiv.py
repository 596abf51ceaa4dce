#!/usr/bin/env python3
"""
equiv.py — is a functor an equivalence (fully faithful and essentially surjective)?
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome, pick_functor  # noqa: E402
from workbench.limits import is_equivalence  # noqa: E402


def run(doc, args):
    F = pick_functor(doc, args)
    report = is_equivalence(F)
    return outcome(report.equivalence, {"functor": F.name, **report.as_dict()},
                   f"fully faithful: {report.fully_faithful}",
                   f"essentially surjective: {report.essentially_surjective}")
