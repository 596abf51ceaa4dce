"""
document.py — WorkbenchDocument load and serialize.

A document is one JSON (or YAML) file with a section per entity kind. Every
entity is named; cross-references are by name. Loading resolves every
reference and validates categories, functors, transformations, presheaves
and presheaf morphisms; pretopologies and enrichments are checked by their
own commands.

Sections:
    catalog              name → {"builder": ..., params}
    categories           name → explicit tables | {"poset": ...} | {"cyclic_group": n}
    functors             name → {"source", "target", "objects", "morphisms"?}
    transformations      name → {"from", "to", "components"}
    pretopologies        name → {"category", "covers"} | {"category", "builder": "trivial" | "opens"}
    enrichments          name → {"category", "addition", "zero", "biproducts"}
    groups               name → {"invariants"} | {"generators", "relations"}
    presheaves           name → {"site", "values", "restrictions"} | {"site", "builder": ...}
    presheaf_morphisms   name → {"from", "to", "components"}
    sequences            name → [i, p]
"""

import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from . import catalog
from .abgrp import AbHom, IntMatrix, PresentedAbGroup, from_invariants
from .errors import (
    DocumentReferenceError,
    MissingEntity,
    ParseError,
    ValidationError,
    WorkbenchError,
)
from .fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    validate_category,
    validate_functor,
    validate_nat_transformation,
)
from .sheaf import (
    Presheaf,
    PresheafMorphism,
    constant_presheaf,
    validate_presheaf,
    validate_presheaf_morphism,
)
from .site import AbEnrichment, Biproduct, CoveringFamily, Pretopology, open_cover_pretopology, trivial_pretopology

SECTIONS = ("catalog", "categories", "functors", "transformations", "pretopologies",
            "enrichments", "groups", "presheaves", "presheaf_morphisms", "sequences")

ENTITY_LABELS = {
    "categories": "category", "functors": "functor", "transformations": "transformation",
    "pretopologies": "site", "enrichments": "enrichment", "groups": "group",
    "presheaves": "presheaf", "presheaf_morphisms": "presheaf morphism",
    "sequences": "sequence", "spaces": "space",
}


# ── YAML loader that remembers line numbers ───────────────────────────────────

class MarkedDict(dict):
    """A mapping that knows the source line of itself and of each key."""

    line = 0

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.lines = {}

    def line_of(self, key) -> int:
        return self.lines.get(key, self.line)


class MarkedLoader(yaml.SafeLoader):
    """Safe loader producing MarkedDicts with string keys."""

    def construct_marked_map(self, node):
        data = MarkedDict()
        data.line = node.start_mark.line + 1
        yield data
        self.flatten_mapping(node)
        for key_node, value_node in node.value:
            key = str(self.construct_object(key_node, deep=True))
            data[key] = self.construct_object(value_node, deep=True)
            data.lines[key] = key_node.start_mark.line + 1


MarkedLoader.add_constructor("tag:yaml.org,2002:map", MarkedLoader.construct_marked_map)


# ── Document ──────────────────────────────────────────────────────────────────

@dataclass
class WorkbenchDocument:
    path: str = "<memory>"
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    transformations: dict = field(default_factory=dict)
    pretopologies: dict = field(default_factory=dict)
    enrichments: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    presheaves: dict = field(default_factory=dict)
    presheaf_morphisms: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    catalog: dict = field(default_factory=dict)
    # names of entities produced by catalog builders, per section
    generated: set = field(default_factory=set)
    # (section, name) → {"field": referenced name}
    links: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)

    def get(self, section: str, name: Optional[str]):
        table = getattr(self, section)
        label = ENTITY_LABELS.get(section, section)
        if name is None:
            if len(table) == 1:
                return next(iter(table.values()))
            raise MissingEntity(
                f"choose a {label} with its flag; the document has {len(table)}: "
                f"{', '.join(sorted(table)) or 'none'}")
        try:
            return table[name]
        except KeyError:
            raise MissingEntity(
                f"no {label} named {name!r}; known: {', '.join(sorted(table)) or 'none'}",
                (name,)) from None

    def name_of(self, section: str, entity) -> str:
        for name, value in getattr(self, section).items():
            if value is entity:
                return name
        for name, value in getattr(self, section).items():
            if value == entity:
                return name
        raise MissingEntity(f"entity is not part of section {section}")

    def summary(self) -> dict:
        return {section: sorted(getattr(self, section))
                for section in ("categories", "functors", "transformations", "pretopologies",
                                "enrichments", "groups", "presheaves", "presheaf_morphisms",
                                "sequences")
                if getattr(self, section)}


# ── Loading ───────────────────────────────────────────────────────────────────

class _Loader:
    def __init__(self, raw: MarkedDict, path: str):
        self.raw = raw
        self.doc = WorkbenchDocument(path=path)

    def where(self, section: str, name: str) -> str:
        line = self.doc.lines.get((section, name))
        return f"{self.doc.path}:{line}" if line else self.doc.path

    @contextmanager
    def entity(self, section: str, name: str):
        label = ENTITY_LABELS.get(section, section)
        try:
            yield
        except (DocumentReferenceError, ValidationError, ParseError):
            raise
        except WorkbenchError as exc:
            raise ParseError(f"{label} {name!r} at {self.where(section, name)}: {exc}",
                             exc.witness) from exc
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"{label} {name!r} at {self.where(section, name)}: "
                             f"malformed entry ({type(exc).__name__}: {exc})") from exc

    def ref(self, section: str, name: Any, owner: tuple):
        table = getattr(self.doc, section)
        if not isinstance(name, str) or name not in table:
            owner_label = f"{ENTITY_LABELS.get(owner[0], owner[0])} {owner[1]!r}"
            raise DocumentReferenceError(
                f"{owner_label} at {self.where(*owner)} refers to undefined "
                f"{ENTITY_LABELS.get(section, section)} {name!r}", (name, self.doc.lines.get(owner)))
        self.doc.links.setdefault(owner, {})[section] = name
        return table[name]

    def section(self, key: str) -> MarkedDict:
        value = self.raw.get(key, MarkedDict())
        if not isinstance(value, dict):
            raise ParseError(f"{self.doc.path}:{self.raw.line_of(key)}: section {key!r} must be a mapping")
        for name in value:
            line = value.line_of(name) if isinstance(value, MarkedDict) else 0
            self.doc.lines[(key, name)] = line
            if key not in ("sequences", "groups") and not isinstance(value[name], dict):
                raise ParseError(f"{self.doc.path}:{line}: entry {name!r} in {key!r} must be a mapping")
        return value

    def run(self) -> WorkbenchDocument:
        unknown = sorted(set(self.raw) - set(SECTIONS))
        if unknown:
            raise ParseError(f"{self.doc.path}: unknown sections {unknown}")
        for name, spec in self.section("catalog").items():
            with self.entity("catalog", name):
                self.doc.catalog[name] = dict(spec)
                built = catalog.build(spec["builder"], name,
                                      {k: v for k, v in spec.items() if k != "builder"})
                for section, entities in built.items():
                    for ename, value in entities.items():
                        getattr(self.doc, section)[ename] = value
                        self.doc.generated.add((section, ename))
                        self.doc.lines.setdefault((section, ename), self.doc.lines[("catalog", name)])
        for name, spec in self.section("categories").items():
            with self.entity("categories", name):
                C = build_category(name, spec)
                validate_category(C).raise_for_error(f"category {name!r} at {self.where('categories', name)}")
                self.doc.categories[name] = C
        for name, spec in self.section("functors").items():
            owner = ("functors", name)
            source = self.ref("categories", spec.get("source"), owner)
            target = self.ref("categories", spec.get("target"), owner)
            with self.entity(*owner):
                F = build_functor(name, source, target, spec)
                validate_functor(F).raise_for_error(f"functor {name!r} at {self.where(*owner)}")
                self.doc.functors[name] = F
        for name, spec in self.section("transformations").items():
            owner = ("transformations", name)
            links = self.doc.links.setdefault(owner, {})
            F = self.ref("functors", spec.get("from"), owner)
            links["from"] = links.pop("functors")
            G = self.ref("functors", spec.get("to"), owner)
            links["to"] = links.pop("functors")
            with self.entity(*owner):
                eta = NatTransformation(F, G, {str(k): str(v) for k, v in spec["components"].items()}, name)
                validate_nat_transformation(eta).raise_for_error(
                    f"transformation {name!r} at {self.where(*owner)}")
                self.doc.transformations[name] = eta
        for name, spec in self.section("pretopologies").items():
            owner = ("pretopologies", name)
            C = self.ref("categories", spec.get("category"), owner)
            with self.entity(*owner):
                self.doc.pretopologies[name] = build_pretopology(name, C, spec)
        for name, spec in self.section("enrichments").items():
            owner = ("enrichments", name)
            C = self.ref("categories", spec.get("category"), owner)
            with self.entity(*owner):
                self.doc.enrichments[name] = build_enrichment(name, C, spec)
        for name, spec in self.section("groups").items():
            with self.entity("groups", name):
                self.doc.groups[name] = self.group(spec, ("groups", name))
        for name, spec in self.section("presheaves").items():
            owner = ("presheaves", name)
            site = self.ref("pretopologies", spec.get("site"), owner)
            with self.entity(*owner):
                mu = self.presheaf(name, site, spec, owner)
                validate_presheaf(mu).raise_for_error(f"presheaf {name!r} at {self.where(*owner)}")
                self.doc.presheaves[name] = mu
        for name, spec in self.section("presheaf_morphisms").items():
            owner = ("presheaf_morphisms", name)
            links = self.doc.links.setdefault(owner, {})
            mu = self.ref("presheaves", spec.get("from"), owner)
            links["from"] = links.pop("presheaves")
            nu = self.ref("presheaves", spec.get("to"), owner)
            links["to"] = links.pop("presheaves")
            with self.entity(*owner):
                comps = {str(x): AbHom(mu.values[str(x)], nu.values[str(x)],
                                       matrix(rows, mu.values[str(x)].generators))
                         for x, rows in spec["components"].items()}
                theta = PresheafMorphism(mu, nu, comps, name)
                validate_presheaf_morphism(theta).raise_for_error(
                    f"presheaf morphism {name!r} at {self.where(*owner)}")
                self.doc.presheaf_morphisms[name] = theta
        for name, spec in self.section("sequences").items():
            owner = ("sequences", name)
            if not isinstance(spec, list) or len(spec) != 2:
                raise ParseError(f"sequence {name!r} at {self.where(*owner)} must list two presheaf morphisms")
            i = self.ref("presheaf_morphisms", spec[0], owner)
            p = self.ref("presheaf_morphisms", spec[1], owner)
            self.doc.links[owner] = {"first": spec[0], "second": spec[1]}
            self.doc.sequences[name] = (i, p)
        return self.doc

    def group(self, spec, owner: tuple) -> PresentedAbGroup:
        if isinstance(spec, str):
            return self.ref("groups", spec, owner)
        return build_group(spec)

    def presheaf(self, name: str, site: Pretopology, spec: dict, owner: tuple) -> Presheaf:
        builder = spec.get("builder")
        if builder == "constant":
            return constant_presheaf(site, self.group(spec["group"], owner), name)
        if builder == "components":
            space = self.ref("spaces", spec.get("space", self.doc.links[owner]["pretopologies"].split(".")[0]),
                             owner)
            return catalog.components_presheaf(site, space, int(spec.get("modulus", 2)), name)
        if builder is not None:
            raise ParseError(f"presheaf {name!r}: unknown builder {builder!r}")
        C = site.base
        values = {str(x): self.group(g, owner) for x, g in spec["values"].items()}
        restrictions = {}
        for f, rows in spec["restrictions"].items():
            f = str(f)
            C.require_morphism(f)
            src, tgt = values[C.cod(f)], values[C.dom(f)]
            restrictions[f] = AbHom(src, tgt, matrix(rows, src.generators))
        return Presheaf(site, values, restrictions, name)


def matrix(rows, cols: int) -> IntMatrix:
    return IntMatrix.from_rows(rows or [], cols)


def build_group(spec) -> PresentedAbGroup:
    if isinstance(spec, list):
        return from_invariants(spec)
    if "invariants" in spec:
        return from_invariants(spec["invariants"])
    k = int(spec["generators"])
    rows = spec.get("relations") or [[] for _ in range(k)]
    cols = int(spec.get("relators", len(rows[0]) if rows else 0))
    return PresentedAbGroup(k, IntMatrix.from_rows(rows, cols))


def build_category(name: str, spec: dict) -> FinCategory:
    if "poset" in spec:
        poset = spec["poset"]
        return catalog.poset_category(poset["elements"], poset.get("order", ()), name)
    if "cyclic_group" in spec:
        return catalog.cyclic_group_category(int(spec["cyclic_group"]), name)
    return FinCategory(
        [str(x) for x in spec.get("objects", ())],
        [tuple(str(v) for v in m) for m in spec.get("morphisms", ())],
        {str(k): str(v) for k, v in spec.get("identities", {}).items()},
        {(str(g), str(f)): str(h) for g, f, h in spec.get("composition", ())},
        name,
    )


def build_functor(name: str, source: FinCategory, target: FinCategory, spec: dict) -> Functor:
    obj_map = {str(k): str(v) for k, v in spec["objects"].items()}
    if "morphisms" not in spec:
        return catalog.thin_functor(source, target, obj_map, name)
    return Functor(source, target, obj_map, {str(k): str(v) for k, v in spec["morphisms"].items()}, name)


def build_pretopology(name: str, C: FinCategory, spec: dict) -> Pretopology:
    builder = spec.get("builder")
    if builder == "trivial":
        return trivial_pretopology(C, name)
    if builder == "opens":
        opens = {str(k): frozenset(str(p) for p in v) for k, v in spec["opens"].items()}
        return open_cover_pretopology(C, opens, name)
    if builder is not None:
        raise ParseError(f"site {name!r}: unknown builder {builder!r}")
    covers = {}
    for obj, fams in spec.get("covers", {}).items():
        if isinstance(fams, dict):
            covers[str(obj)] = [CoveringFamily(tuple(str(m) for m in legs), str(fname))
                                for fname, legs in fams.items()]
        else:
            covers[str(obj)] = [tuple(str(m) for m in legs) for legs in fams]
    return Pretopology(C, covers, name)


def build_enrichment(name: str, C: FinCategory, spec: dict) -> AbEnrichment:
    addition: dict = {}
    for f, g, h in spec.get("addition", ()):
        f, g, h = str(f), str(g), str(h)
        addition.setdefault((C.dom(f), C.cod(f)), {})[(f, g)] = h
    zero = {(str(x), str(y)): str(z) for x, y, z in spec.get("zero", ())}
    biproducts = {}
    for bp in spec.get("biproducts", ()):
        biproducts[(str(bp["left"]), str(bp["right"]))] = Biproduct(
            str(bp["object"]), str(bp["inj_left"]), str(bp["inj_right"]),
            str(bp["proj_left"]), str(bp["proj_right"]))
    return AbEnrichment(C, addition, zero, biproducts, name)


def load_text(text: str, path: str = "<string>") -> WorkbenchDocument:
    try:
        raw = yaml.load(text, Loader=MarkedLoader)
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if raw is None:
        raw = MarkedDict()
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: a document must be a mapping of sections")
    return _Loader(raw, path).run()


def load(path) -> WorkbenchDocument:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from exc
    return load_text(text, str(p))


# ── Serialization ─────────────────────────────────────────────────────────────

def serialize_category(C: FinCategory) -> dict:
    return {
        "objects": list(C.objects),
        "morphisms": [list(t) for t in C.morphism_triples()],
        "identities": dict(sorted(C.identities_table().items())),
        "composition": [[g, f, h] for (g, f), h in sorted(C.composition_table().items())],
    }


def serialize_group(G: PresentedAbGroup) -> dict:
    return {"generators": G.generators, "relators": G.relations.cols,
            "relations": G.relations.to_lists()}


def serialize(doc: WorkbenchDocument) -> dict:
    """Canonical plain-data form; catalog entities are emitted as their catalog entries."""
    def own(section):
        return sorted(n for n in getattr(doc, section) if (section, n) not in doc.generated)

    out: dict = {}
    if doc.catalog:
        out["catalog"] = {k: dict(sorted(v.items())) for k, v in sorted(doc.catalog.items())}
    if own("categories"):
        out["categories"] = {n: serialize_category(doc.categories[n]) for n in own("categories")}
    if own("functors"):
        out["functors"] = {}
        for n in own("functors"):
            F = doc.functors[n]
            out["functors"][n] = {"source": doc.name_of("categories", F.source),
                                  "target": doc.name_of("categories", F.target),
                                  "objects": dict(sorted(F.obj_map.items())),
                                  "morphisms": dict(sorted(F.mor_map.items()))}
    if doc.transformations:
        out["transformations"] = {
            n: {"from": doc.name_of("functors", eta.source), "to": doc.name_of("functors", eta.target),
                "components": dict(sorted(eta.components.items()))}
            for n, eta in sorted(doc.transformations.items())}
    if own("pretopologies"):
        out["pretopologies"] = {
            n: {"category": doc.name_of("categories", doc.pretopologies[n].base),
                "covers": {obj: {fam.name: list(fam.legs) for fam in fams}
                           for obj, fams in sorted(doc.pretopologies[n].items())}}
            for n in own("pretopologies")}
    if own("enrichments"):
        out["enrichments"] = {}
        for n in own("enrichments"):
            E = doc.enrichments[n]
            out["enrichments"][n] = {
                "category": doc.name_of("categories", E.base),
                "addition": sorted([f, g, h] for table in E.addition.values() for (f, g), h in table.items()),
                "zero": sorted([x, y, z] for (x, y), z in E.zero.items()),
                "biproducts": [{"left": x, "right": y, "object": bp.object,
                                "inj_left": bp.inj_left, "inj_right": bp.inj_right,
                                "proj_left": bp.proj_left, "proj_right": bp.proj_right}
                               for (x, y), bp in sorted(E.biproducts.items())],
            }
    if doc.groups:
        out["groups"] = {n: serialize_group(G) for n, G in sorted(doc.groups.items())}
    if doc.presheaves:
        out["presheaves"] = {
            n: {"site": doc.name_of("pretopologies", mu.site),
                "values": {x: serialize_group(G) for x, G in sorted(mu.values.items())},
                "restrictions": {f: h.matrix.to_lists() for f, h in sorted(mu.restrictions.items())}}
            for n, mu in sorted(doc.presheaves.items())}
    if doc.presheaf_morphisms:
        out["presheaf_morphisms"] = {
            n: {"from": doc.name_of("presheaves", th.source), "to": doc.name_of("presheaves", th.target),
                "components": {x: h.matrix.to_lists() for x, h in sorted(th.components.items())}}
            for n, th in sorted(doc.presheaf_morphisms.items())}
    if doc.sequences:
        out["sequences"] = {n: [doc.name_of("presheaf_morphisms", i), doc.name_of("presheaf_morphisms", p)]
                            for n, (i, p) in sorted(doc.sequences.items())}
    return out


def dumps(doc: WorkbenchDocument) -> str:
    return json.dumps(serialize(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
