#!/usr/bin/env python3
"""
_common.py — shared helpers for fixcat command scripts.

Prefixed with _ so the command scanner skips it.

Provides:
    Outcome           — verdict, report and summary lines returned by run()
    outcome           — convenience constructor
    setting           — CLI flag > INI override > module constant
    pick_*            — resolve entities named by the selection flags
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from workbench.errors import MissingEntity, WorkbenchError  # noqa: E402
from workbench.nerve import is_loop_free  # noqa: E402


@dataclass
class Outcome:
    passed: bool
    report: dict
    summary: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def outcome(passed: bool, report: dict, *summary: str, warnings=()) -> Outcome:
    return Outcome(bool(passed), report, list(summary), list(warnings))


def flag(args, name: str):
    return getattr(args, name, None)


def setting(value, default):
    return default if value is None else value


def require(args, name: str) -> str:
    value = flag(args, name)
    if value is None:
        raise MissingEntity(f"this command needs --{name.replace('_', '-')}")
    return value


# ── Entity pickers ────────────────────────────────────────────────────────────

def pick_functor(doc, args, name: str = "functor"):
    return doc.get("functors", flag(args, name))


def pick_category(doc, args):
    if flag(args, "category"):
        return doc.get("categories", args.category)
    if flag(args, "functor"):
        return pick_functor(doc, args).source
    if flag(args, "site"):
        return doc.get("pretopologies", args.site).base
    return doc.get("categories", None)


def pick_site(doc, args):
    return doc.get("pretopologies", flag(args, "site"))


def pick_presheaf(doc, args):
    if flag(args, "presheaf") is None and flag(args, "site"):
        site = pick_site(doc, args)
        on_site = [mu for mu in doc.presheaves.values() if mu.site is site]
        if len(on_site) == 1:
            return on_site[0]
    return doc.get("presheaves", flag(args, "presheaf"))


def pick_presheaves(doc, args, site=None) -> list:
    """--presheaves a,b,c, else --presheaf, else every presheaf on the site."""
    names = flag(args, "presheaves")
    if names:
        return [doc.get("presheaves", n.strip()) for n in names.split(",") if n.strip()]
    if flag(args, "presheaf"):
        return [doc.get("presheaves", args.presheaf)]
    found = [mu for _, mu in sorted(doc.presheaves.items())
             if site is None or mu.site is site]
    if not found:
        raise MissingEntity("no presheaves to test; name them with --presheaves")
    return found


def pick_cover(site, args, obj: Optional[str] = None):
    name = require(args, "cover")
    obj = obj or flag(args, "object")
    try:
        if obj is not None:
            return site.family(obj, name)
        return site.find(name)[1]
    except WorkbenchError as exc:
        raise MissingEntity(f"site {site.name!r}: {exc}", exc.witness) from None


def pick_morphism(C, args, name: str = "morphism") -> str:
    mid = require(args, name)
    if not C.has_morphism(mid):
        raise MissingEntity(f"category {C.name!r} has no morphism {mid!r}", (mid,))
    return mid


def pick_object(C, args) -> str:
    obj = require(args, "object")
    if not C.has_object(obj):
        raise MissingEntity(f"category {C.name!r} has no object {obj!r}", (obj,))
    return obj


# ── Report fragments ──────────────────────────────────────────────────────────

def functor_maps(F) -> dict:
    return {"objects": dict(sorted(F.obj_map.items())),
            "morphisms": dict(sorted(F.mor_map.items()))}


def category_shape(C) -> dict:
    return {"name": C.name, "objects": list(C.objects), "morphisms": len(C.morphisms)}


def check_mark(ok: bool) -> str:
    return "yes" if ok else "no"


def degree_for(C, args, default: int) -> int:
    """--max-degree, else the longest chain of a loop-free category, else ``default``."""
    if flag(args, "max_degree") is not None:
        return args.max_degree
    lf = is_loop_free(C)
    return lf.longest_chain if lf.loop_free else default
