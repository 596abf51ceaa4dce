"""
fixpoint.py — fixed points of endofunctors and the category S(F).

A fixed point is a pair (X, α) with α: X → F(X) an isomorphism; every
witness α counts, so one object may carry several fixed points. S(F) has
these pairs as objects and base morphisms f with F(f)∘α = β∘f as arrows.
"""

from dataclasses import dataclass, field

from .errors import NotEndofunctor, NotNaturalIso
from .fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    compose_functors,
    identity_functor,
    inverse_transformation,
    is_iso,
    is_nat_iso,
    isomorphisms,
)


@dataclass(frozen=True, order=True)
class FixedPoint:
    object: str
    iso: str

    @property
    def key(self) -> str:
        return fixed_point_key(self.object, self.iso)


def fixed_point_key(obj: str, iso: str) -> str:
    return f"({obj}|{iso})"


def fix_morphism_id(f: str, source: str, target: str) -> str:
    return f"[{f}|{source}>{target}]"


def _require_endofunctor(F: Functor) -> FinCategory:
    if not F.is_endofunctor:
        raise NotEndofunctor(f"functor {F.name!r} is not an endofunctor", (F.name,))
    return F.source


def strict_fixed_points(F: Functor) -> list:
    C = _require_endofunctor(F)
    return [x for x in C.objects if F.on_object(x) == x]


def is_fixed_point(F: Functor, obj: str, iso: str) -> bool:
    C = _require_endofunctor(F)
    return (C.dom(iso) == obj and C.cod(iso) == F.on_object(obj) and is_iso(C, iso))


def fixed_points(F: Functor) -> list:
    C = _require_endofunctor(F)
    return [FixedPoint(x, alpha) for x in C.objects
            for alpha in isomorphisms(C, x, F.on_object(x))]


def iso_class(C: FinCategory, obj: str) -> list:
    return [y for y in C.objects if isomorphisms(C, obj, y)]


def _is_fix_morphism(F: Functor, f: str, a: FixedPoint, b: FixedPoint) -> bool:
    C = F.source
    return C.compose(F.on_morphism(f), a.iso) == C.compose(b.iso, f)


# ── S(F) ──────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FixCategoryResult:
    functor: Functor
    carrier: FinCategory
    forgetful: Functor
    points: dict = field(default_factory=dict, compare=False)

    def point(self, key: str) -> FixedPoint:
        self.carrier.require_object(key)
        return self.points[key]

    def underlying(self, mid: str) -> str:
        return self.forgetful.on_morphism(self.carrier.require_morphism(mid))


def fix_category(F: Functor) -> FixCategoryResult:
    C = _require_endofunctor(F)
    points = {p.key: p for p in fixed_points(F)}
    morphisms, legs = [], {}
    for ka, a in points.items():
        for kb, b in points.items():
            for f in C.hom(a.object, b.object):
                if _is_fix_morphism(F, f, a, b):
                    mid = fix_morphism_id(f, ka, kb)
                    morphisms.append((mid, ka, kb))
                    legs[mid] = f
    identities = {k: fix_morphism_id(C.identity(p.object), k, k) for k, p in points.items()}
    composition = {}
    for m1, s1, t1 in morphisms:
        for m2, s2, t2 in morphisms:
            if s2 == t1:
                composition[(m2, m1)] = fix_morphism_id(C.compose(legs[m2], legs[m1]), s1, t2)
    carrier = FinCategory(points, morphisms, identities, composition, name=f"S({F.name})")
    forgetful = Functor(carrier, C, {k: p.object for k, p in points.items()}, legs,
                        name=f"for_{F.name}")
    return FixCategoryResult(F, carrier, forgetful, points)


# ── Transport along natural isomorphisms ──────────────────────────────────────

@dataclass(frozen=True)
class TransportResult:
    forward: Functor
    backward: Functor
    round_trip_identity: bool


def _transport_functor(eta: NatTransformation, src: FixCategoryResult,
                       tgt: FixCategoryResult) -> Functor:
    C = src.carrier
    base = eta.source.source
    obj_map = {k: fixed_point_key(p.object, base.compose(eta[p.object], p.iso))
               for k, p in src.points.items()}
    mor_map = {m: fix_morphism_id(src.underlying(m), obj_map[C.dom(m)], obj_map[C.cod(m)])
               for m in C.morphisms}
    return Functor(C, tgt.carrier, obj_map, mor_map, name=f"{eta.name}*")


def transport(eta: NatTransformation) -> TransportResult:
    """(η)*: S(F) → S(F'), (X, α) ↦ (X, η_X∘α), with the round trip through η⁻¹ checked."""
    _require_endofunctor(eta.source)
    _require_endofunctor(eta.target)
    if not is_nat_iso(eta):
        raise NotNaturalIso(f"transformation {eta.name!r} is not a natural isomorphism", (eta.name,))
    inverse = inverse_transformation(eta)
    sf, sf2 = fix_category(eta.source), fix_category(eta.target)
    forward = _transport_functor(eta, sf, sf2)
    backward = _transport_functor(inverse, sf2, sf)
    round_trip = (compose_functors(backward, forward) == identity_functor(sf.carrier)
                  and compose_functors(forward, backward) == identity_functor(sf2.carrier))
    return TransportResult(forward, backward, round_trip)


# ── Hom-set colimit ───────────────────────────────────────────────────────────

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so class representatives are canonical
            lo, hi = sorted((ra, rb))
            self.parent[hi] = lo


@dataclass(frozen=True)
class ColimitReport:
    size: int
    classes: tuple
    index_category: str = "C"

    def as_dict(self) -> dict:
        return {"size": self.size,
                "classes": [[list(e) for e in cls] for cls in self.classes],
                "index_category": self.index_category}


def hom_colimit(C: FinCategory, F: Functor, X: str) -> ColimitReport:
    """Colimit over C of i ↦ Hom(X, F(X_i)), glued by φ ~ F(f)∘φ."""
    _require_endofunctor(F)
    C.require_object(X)
    elements = [(xi, phi) for xi in C.objects for phi in C.hom(X, F.on_object(xi))]
    uf = _UnionFind(elements)
    for f in C.morphisms:
        xi, xj = C.dom(f), C.cod(f)
        for phi in C.hom(X, F.on_object(xi)):
            uf.union((xi, phi), (xj, C.compose(F.on_morphism(f), phi)))
    groups: dict = {}
    for e in elements:
        groups.setdefault(uf.find(e), []).append(e)
    classes = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    return ColimitReport(len(classes), classes)
