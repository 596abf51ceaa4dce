#!/usr/bin/env python3
"""
homology.py — integral homology of the nerve, from normalized chains.

H_n needs chains up to degree n + 1, so the nerve is built one degree past
the requested bound and every reported group is exact.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import degree_for, outcome, pick_category  # noqa: E402
from _render import group_text  # noqa: E402
from workbench.nerve import chain_complex, homology, nerve  # noqa: E402

MAX_DEGREE = 3


def run(doc, args):
    C = pick_category(doc, args)
    N = degree_for(C, args, MAX_DEGREE)
    nv = nerve(C, N + 1)
    cx = chain_complex(nv)
    groups = [homology(cx, n) for n in range(N + 1)]
    report = {"category": C.name, "max_degree": N,
              "homology": [{"degree": n, "invariants": h.as_list(), "betti": h.free_rank}
                           for n, h in enumerate(groups)]}
    warnings = [] if nv.exact else [f"homology above degree {N} not computed"]
    return outcome(True, report, *(f"H_{n} = {group_text(h.as_list())}" for n, h in enumerate(groups)),
                   warnings=warnings)
