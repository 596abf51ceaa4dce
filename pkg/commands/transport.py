#!/usr/bin/env python3
"""
transport.py — transport fixed points along a natural isomorphism η: F ≅ F'.

Passes when the transported functors S(F) → S(F') → S(F) compose to the
identity both ways. With --functor/--functor2 instead of --transformation,
a natural isomorphism between the two is searched for first.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import flag, functor_maps, outcome, pick_functor  # noqa: E402
from workbench.errors import NotNaturalIso  # noqa: E402
from workbench.fincat import functors_isomorphic  # noqa: E402
from workbench.fixpoint import transport  # noqa: E402


def run(doc, args):
    if flag(args, "transformation") is None and flag(args, "functor2"):
        F, G = pick_functor(doc, args), pick_functor(doc, args, "functor2")
        eta = functors_isomorphic(F, G)
        if eta is None:
            raise NotNaturalIso(f"no natural isomorphism {F.name} ≅ {G.name}")
    else:
        eta = doc.get("transformations", flag(args, "transformation"))
    res = transport(eta)
    report = {"transformation": eta.name, "forward": functor_maps(res.forward),
              "backward": functor_maps(res.backward),
              "round_trip_identity": res.round_trip_identity}
    return outcome(res.round_trip_identity, report,
                   f"{len(res.forward.source.objects)} fixed points of {eta.source.name} "
                   f"↔ {len(res.forward.target.objects)} of {eta.target.name}")
