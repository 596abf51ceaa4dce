#!/usr/bin/env python3
"""
nerve.py — nondegenerate simplex counts of the nerve, truncated at --max-degree.

Without the flag a loop-free category is taken up to its longest chain,
which makes the truncation exact.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import degree_for, outcome, pick_category  # noqa: E402
from workbench.nerve import euler_characteristic, has_initial_object, has_terminal_object, nerve  # noqa: E402

MAX_DEGREE = 3


def run(doc, args):
    C = pick_category(doc, args)
    N = degree_for(C, args, MAX_DEGREE)
    nv = nerve(C, N)
    report = {"category": C.name, "max_degree": N, "counts": nv.counts, "exact": nv.exact,
              "initial_object": has_initial_object(C), "terminal_object": has_terminal_object(C)}
    warnings = []
    if nv.exact:
        report["euler_characteristic"] = euler_characteristic(nv)
    else:
        warnings.append(f"nerve truncated at degree {N}; higher simplices exist")
    return outcome(True, report, f"simplices per degree: {nv.counts}", warnings=warnings)
