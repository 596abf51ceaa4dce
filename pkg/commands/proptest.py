#!/usr/bin/env python3
"""
proptest.py — run the seeded property suites against their brute-force oracles.

--suite picks one suite (default: all), --seed fixes the generator,
--trials overrides the suite's trial count.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, outcome, setting  # noqa: E402
from workbench.errors import MissingEntity  # noqa: E402
from workbench.proptest import SUITES, run_suite  # noqa: E402

NEEDS_DOCUMENT = False
SEED = 0


def run(doc, args):
    name = flag(args, "suite")
    if name is not None and name not in SUITES:
        raise MissingEntity(f"no suite named {name!r}; known: {', '.join(SUITES)}", (name,))
    names = [name] if name else list(SUITES)
    seed = setting(flag(args, "seed"), SEED)
    results = [run_suite(n, seed, flag(args, "trials")) for n in names]
    summary = [f"{r.name}: {'ok' if r.ok else 'FAILED'} ({r.checked} checked, {r.skipped} skipped, "
               f"{len(r.failures)} failures)" for r in results]
    return outcome(all(r.ok for r in results), {"seed": seed, "suites": [r.as_dict() for r in results]},
                   *summary)
