#!/usr/bin/env python3
"""
fixcat_build.py — build the category S(F) of fixed points and its forgetful functor.

Objects are rendered (X|α), morphisms [f|source>target].
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import functor_maps, outcome, pick_functor  # noqa: E402
from workbench.fincat import validate_category, validate_functor  # noqa: E402
from workbench.fixpoint import fix_category  # noqa: E402

SHOW_COMPOSITION = 0


def run(doc, args):
    F = pick_functor(doc, args)
    SF = fix_category(F)
    S = SF.carrier
    laws = validate_category(S)
    forgetful = validate_functor(SF.forgetful)
    report = {"functor": F.name, "objects": list(S.objects),
              "morphisms": [list(t) for t in S.morphism_triples()],
              "forgetful": functor_maps(SF.forgetful),
              "category_laws": laws.as_dict(), "forgetful_laws": forgetful.as_dict()}
    if SHOW_COMPOSITION:
        report["composition"] = [[g, f, h] for (g, f), h in sorted(S.composition_table().items())]
    return outcome(laws.ok and forgetful.ok, report,
                   f"S({F.name}): {len(S.objects)} objects, {len(S.morphisms)} morphisms")
