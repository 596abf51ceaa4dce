#!/usr/bin/env python3
"""
validate.py — load a document and summarise what it defines.

Loading already checks every category, functor, transformation, presheaf
and presheaf morphism, so reaching run() means the document is sound.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _common import outcome  # noqa: E402
from workbench.nerve import is_loop_free  # noqa: E402


def run(doc, args):
    categories = {}
    for name, C in sorted(doc.categories.items()):
        lf = is_loop_free(C)
        categories[name] = {"objects": len(C.objects), "morphisms": len(C.morphisms),
                            "loop_free": lf.loop_free}
    counts = {section: len(names) for section, names in doc.summary().items()}
    summary = [f"{n} {section}" for section, n in counts.items()]
    return outcome(True, {"sections": doc.summary(), "categories": categories},
                   f"{doc.path} loads cleanly", *summary)
