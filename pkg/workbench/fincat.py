"""
fincat.py — finite categories, functors and natural transformations.

A FinCategory is an explicit composition table. Identifiers are opaque
strings and every canonical choice downstream is made by lexicographic order
on them, so all listings here are sorted.

    C = FinCategory(
        objects=["0", "1"],
        morphisms=[("id0", "0", "0"), ("id1", "1", "1"), ("a", "0", "1")],
        identities={"0": "id0", "1": "id1"},
        composition={("id1", "a"): "a", ("a", "id0"): "a", ...},
    )
    validate_category(C).raise_for_error()

composition[(g, f)] is g∘f and must be present exactly when cod(f) = dom(g).
"""

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .errors import (
    ParseError,
    UnknownMorphism,
    UnknownObject,
    ValidationReport,
    WorkbenchError,
)


# ── Categories ────────────────────────────────────────────────────────────────

class FinCategory:
    """Immutable finite category given by an explicit composition table."""

    def __init__(self, objects: Iterable[str], morphisms: Iterable,
                 identities: Mapping[str, str],
                 composition: Mapping[tuple, str], name: str = ""):
        self.name = name
        self._objects = tuple(sorted(str(x) for x in objects))
        if len(set(self._objects)) != len(self._objects):
            raise ParseError(f"category {name!r}: duplicate object ids")
        self._dom: dict = {}
        self._cod: dict = {}
        for entry in morphisms:
            mid, dom, cod = (str(v) for v in entry)
            if mid in self._dom:
                raise ParseError(f"category {name!r}: duplicate morphism id {mid!r}")
            for end in (dom, cod):
                if end not in self._objects:
                    raise ParseError(
                        f"category {name!r}: morphism {mid!r} refers to unknown object {end!r}")
            self._dom[mid] = dom
            self._cod[mid] = cod
        self._morphisms = tuple(sorted(self._dom))

        self._identities = {}
        for obj, mid in identities.items():
            if obj not in self._objects:
                raise ParseError(f"category {name!r}: identity for unknown object {obj!r}")
            if mid not in self._dom:
                raise ParseError(f"category {name!r}: identity {mid!r} is not a morphism")
            self._identities[str(obj)] = str(mid)

        self._composition = {}
        for (g, f), h in composition.items():
            for mid in (g, f, h):
                if mid not in self._dom:
                    raise ParseError(
                        f"category {name!r}: composition entry uses unknown morphism {mid!r}")
            if self._cod[f] != self._dom[g]:
                raise ParseError(
                    f"category {name!r}: composition entry ({g}, {f}) is not composable")
            self._composition[(g, f)] = h

        hom = defaultdict(list)
        for mid in self._morphisms:
            hom[(self._dom[mid], self._cod[mid])].append(mid)
        self._hom = {key: tuple(ids) for key, ids in hom.items()}
        self._key = (
            self._objects,
            tuple((m, self._dom[m], self._cod[m]) for m in self._morphisms),
            tuple(sorted(self._identities.items())),
            tuple(sorted(self._composition.items())),
        )

    # ── Accessors ────────────────────────────────────────────────────────────

    @property
    def objects(self) -> tuple:
        return self._objects

    @property
    def morphisms(self) -> tuple:
        return self._morphisms

    def has_object(self, obj: str) -> bool:
        return obj in self._identities or obj in self._objects

    def has_morphism(self, mid: str) -> bool:
        return mid in self._dom

    def require_object(self, obj: str) -> str:
        if obj not in self._objects:
            raise UnknownObject(f"no object {obj!r} in {self.name or 'category'}", (obj,))
        return obj

    def require_morphism(self, mid: str) -> str:
        if mid not in self._dom:
            raise UnknownMorphism(f"no morphism {mid!r} in {self.name or 'category'}", (mid,))
        return mid

    def dom(self, mid: str) -> str:
        return self._dom[self.require_morphism(mid)]

    def cod(self, mid: str) -> str:
        return self._cod[self.require_morphism(mid)]

    def identity(self, obj: str) -> str:
        self.require_object(obj)
        try:
            return self._identities[obj]
        except KeyError:
            raise WorkbenchError(f"object {obj!r} has no identity") from None

    def is_identity(self, mid: str) -> bool:
        return self._identities.get(self._dom.get(mid)) == mid

    def hom(self, x: str, y: str) -> tuple:
        return self._hom.get((x, y), ())

    def compose(self, g: str, f: str) -> str:
        """Return g∘f."""
        try:
            return self._composition[(g, f)]
        except KeyError:
            self.require_morphism(g)
            self.require_morphism(f)
            raise WorkbenchError(
                f"no composite for ({g}, {f}) in {self.name or 'category'}", (g, f)) from None

    def compose_path(self, *mids: str) -> str:
        """compose_path(h, g, f) = h∘g∘f."""
        result = mids[-1]
        for mid in reversed(mids[:-1]):
            result = self.compose(mid, result)
        return result

    def identities_table(self) -> dict:
        return dict(self._identities)

    def composition_table(self) -> dict:
        return dict(self._composition)

    def morphism_triples(self) -> list:
        return [(m, self._dom[m], self._cod[m]) for m in self._morphisms]

    def __eq__(self, other) -> bool:
        return isinstance(other, FinCategory) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"FinCategory({label}{len(self._objects)} objects, {len(self._morphisms)} morphisms)"


def opposite(C: FinCategory) -> FinCategory:
    """The opposite category; morphism ids are shared with C."""
    return FinCategory(
        C.objects,
        [(m, cod, dom) for m, dom, cod in C.morphism_triples()],
        C.identities_table(),
        {(f, g): h for (g, f), h in C.composition_table().items()},
        name=f"{C.name}^op" if C.name else "",
    )


def validate_category(C: FinCategory) -> ValidationReport:
    """Check identities, totality, unit laws and associativity exhaustively."""
    for obj in C.objects:
        mid = C.identities_table().get(obj)
        if mid is None:
            return ValidationReport.failed("MissingIdentity", f"object {obj!r} has no identity", obj)
        if C.dom(mid) != obj or C.cod(mid) != obj:
            return ValidationReport.failed(
                "MissingIdentity", f"identity {mid!r} of {obj!r} is not an endomorphism of it", obj, mid)

    table = C.composition_table()
    for f in C.morphisms:
        for g in _out_of(C, C.cod(f)):
            h = table.get((g, f))
            if h is None:
                return ValidationReport.failed(
                    "CompositionGap", f"no entry for {g}∘{f}", g, f)
            if C.dom(h) != C.dom(f) or C.cod(h) != C.cod(g):
                return ValidationReport.failed(
                    "CompositionTyping", f"{g}∘{f} = {h} has the wrong domain or codomain", g, f, h)

    for f in C.morphisms:
        left = table[(C.identity(C.cod(f)), f)]
        if left != f:
            return ValidationReport.failed(
                "UnitLawViolation", f"id∘{f} = {left}", C.identity(C.cod(f)), f)
        right = table[(f, C.identity(C.dom(f)))]
        if right != f:
            return ValidationReport.failed(
                "UnitLawViolation", f"{f}∘id = {right}", f, C.identity(C.dom(f)))

    for f in C.morphisms:
        for g in _out_of(C, C.cod(f)):
            gf = table[(g, f)]
            for h in _out_of(C, C.cod(g)):
                if table[(h, gf)] != table[(table[(h, g)], f)]:
                    return ValidationReport.failed(
                        "AssociativityViolation", f"({h}∘{g})∘{f} differs from {h}∘({g}∘{f})",
                        h, g, f)
    return ValidationReport.passed()


def _out_of(C: FinCategory, obj: str) -> tuple:
    return tuple(m for y in C.objects for m in C.hom(obj, y))


# ── Isomorphisms ──────────────────────────────────────────────────────────────

def find_inverse(C: FinCategory, f: str) -> Optional[str]:
    """Return the two-sided inverse of f, or None."""
    x, y = C.dom(f), C.cod(f)
    for g in C.hom(y, x):
        if C.compose(g, f) == C.identity(x) and C.compose(f, g) == C.identity(y):
            return g
    return None


def is_iso(C: FinCategory, f: str) -> bool:
    return find_inverse(C, f) is not None


def isomorphisms(C: FinCategory, x: str, y: str) -> tuple:
    return tuple(f for f in C.hom(x, y) if find_inverse(C, f) is not None)


def are_isomorphic(C: FinCategory, x: str, y: str) -> bool:
    return bool(isomorphisms(C, x, y))


# ── Functors ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "obj_map", MappingProxyType(dict(self.obj_map)))
        object.__setattr__(self, "mor_map", MappingProxyType(dict(self.mor_map)))

    def on_object(self, obj: str) -> str:
        try:
            return self.obj_map[obj]
        except KeyError:
            raise UnknownObject(f"functor {self.name!r} is undefined on object {obj!r}", (obj,)) from None

    def on_morphism(self, mid: str) -> str:
        try:
            return self.mor_map[mid]
        except KeyError:
            raise UnknownMorphism(
                f"functor {self.name!r} is undefined on morphism {mid!r}", (mid,)) from None

    @property
    def is_endofunctor(self) -> bool:
        return self.source == self.target

    def _key(self) -> tuple:
        return (self.source, self.target,
                tuple(sorted(self.obj_map.items())), tuple(sorted(self.mor_map.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, Functor) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Functor({self.name or '?'}: {self.source!r} -> {self.target!r})"


def identity_functor(C: FinCategory, name: str = "Id") -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, name)


def constant_functor(C: FinCategory, D: FinCategory, obj: str, name: str = "") -> Functor:
    D.require_object(obj)
    ident = D.identity(obj)
    return Functor(C, D, {x: obj for x in C.objects}, {m: ident for m in C.morphisms},
                   name or f"const_{obj}")


def compose_functors(G: Functor, F: Functor, name: str = "") -> Functor:
    """G∘F."""
    return Functor(
        F.source, G.target,
        {x: G.on_object(F.on_object(x)) for x in F.source.objects},
        {m: G.on_morphism(F.on_morphism(m)) for m in F.source.morphisms},
        name or f"{G.name}∘{F.name}",
    )


def validate_functor(F: Functor) -> ValidationReport:
    C, D = F.source, F.target
    for x in C.objects:
        if F.obj_map.get(x) not in D.objects:
            return ValidationReport.failed(
                "DomCodMismatch", f"object {x!r} has no image in the target", x)
    for m in C.morphisms:
        image = F.mor_map.get(m)
        if image is None or not D.has_morphism(image):
            return ValidationReport.failed(
                "DomCodMismatch", f"morphism {m!r} has no image in the target", m)
        if D.dom(image) != F.obj_map[C.dom(m)] or D.cod(image) != F.obj_map[C.cod(m)]:
            return ValidationReport.failed(
                "DomCodMismatch", f"F({m}) = {image} does not go F(dom) -> F(cod)", m, image)
    for x in C.objects:
        if F.mor_map[C.identity(x)] != D.identity(F.obj_map[x]):
            return ValidationReport.failed(
                "IdentityNotPreserved", f"F(id_{x}) is not an identity", x)
    for (g, f), h in C.composition_table().items():
        if F.mor_map[h] != D.compose(F.mor_map[g], F.mor_map[f]):
            return ValidationReport.failed(
                "CompositionNotPreserved", f"F({g}∘{f}) differs from F({g})∘F({f})", g, f)
    return ValidationReport.passed()


def is_full(F: Functor) -> bool:
    C, D = F.source, F.target
    for x, y in product(C.objects, repeat=2):
        images = {F.on_morphism(m) for m in C.hom(x, y)}
        if images != set(D.hom(F.on_object(x), F.on_object(y))):
            return False
    return True


def is_faithful(F: Functor) -> bool:
    C = F.source
    for x, y in product(C.objects, repeat=2):
        arrows = C.hom(x, y)
        if len({F.on_morphism(m) for m in arrows}) != len(arrows):
            return False
    return True


def enumerate_functors(C: FinCategory, D: FinCategory,
                       limit: Optional[int] = None) -> Iterator[Functor]:
    """Yield every functor C -> D in canonical order (backtracking search)."""
    free = [m for m in C.morphisms if not C.is_identity(m)]
    position = {m: i for i, m in enumerate(free)}
    # triples checked as soon as their last non-identity member is assigned
    checks = defaultdict(list)
    for (g, f), h in C.composition_table().items():
        members = [m for m in (g, f, h) if m in position]
        if members:
            checks[max(position[m] for m in members)].append((g, f, h))

    count = 0
    for images in product(D.objects, repeat=len(C.objects)):
        obj_map = dict(zip(C.objects, images))
        mor_map = {C.identity(x): D.identity(obj_map[x]) for x in C.objects}

        def extend(i: int) -> Iterator[dict]:
            if i == len(free):
                yield dict(mor_map)
                return
            m = free[i]
            for candidate in D.hom(obj_map[C.dom(m)], obj_map[C.cod(m)]):
                mor_map[m] = candidate
                if all(mor_map[h] == D.compose(mor_map[g], mor_map[f]) for g, f, h in checks[i]):
                    yield from extend(i + 1)
            mor_map.pop(m, None)

        for assignment in extend(0):
            yield Functor(C, D, obj_map, assignment, f"F{count}")
            count += 1
            if limit is not None and count >= limit:
                return


# ── Natural transformations ───────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: Functor
    target: Functor
    components: Mapping[str, str] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", MappingProxyType(dict(self.components)))

    def __getitem__(self, obj: str) -> str:
        try:
            return self.components[obj]
        except KeyError:
            raise UnknownObject(f"transformation {self.name!r} has no component at {obj!r}",
                                (obj,)) from None


def validate_nat_transformation(eta: NatTransformation) -> ValidationReport:
    F, G = eta.source, eta.target
    if F.source != G.source or F.target != G.target:
        return ValidationReport.failed(
            "ComponentTypeMismatch", "functors do not share source and target")
    C, D = F.source, F.target
    for x in C.objects:
        comp = eta.components.get(x)
        if comp is None or not D.has_morphism(comp):
            return ValidationReport.failed("ComponentTypeMismatch", f"no component at {x!r}", x)
        if D.dom(comp) != F.on_object(x) or D.cod(comp) != G.on_object(x):
            return ValidationReport.failed(
                "ComponentTypeMismatch", f"component {comp!r} at {x!r} is not F(X) -> G(X)", x, comp)
    for f in C.morphisms:
        x, y = C.dom(f), C.cod(f)
        if D.compose(G.on_morphism(f), eta[x]) != D.compose(eta[y], F.on_morphism(f)):
            return ValidationReport.failed(
                "NaturalitySquareFails", f"square at {f!r} does not commute", f)
    return ValidationReport.passed()


def is_nat_iso(eta: NatTransformation) -> bool:
    if not validate_nat_transformation(eta):
        return False
    D = eta.source.target
    return all(is_iso(D, eta[x]) for x in eta.source.source.objects)


def identity_transformation(F: Functor) -> NatTransformation:
    D = F.target
    return NatTransformation(F, F, {x: D.identity(F.on_object(x)) for x in F.source.objects},
                             f"Id_{F.name}")


def inverse_transformation(eta: NatTransformation) -> NatTransformation:
    D = eta.source.target
    components = {}
    for x in eta.source.source.objects:
        inverse = find_inverse(D, eta[x])
        if inverse is None:
            raise WorkbenchError(f"component at {x!r} is not invertible", (x, eta[x]))
        components[x] = inverse
    return NatTransformation(eta.target, eta.source, components, f"{eta.name}^-1")


def functors_isomorphic(F: Functor, G: Functor) -> Optional[NatTransformation]:
    """Backtracking search for a natural isomorphism F ≅ G."""
    if F.source != G.source or F.target != G.target:
        return None
    C, D = F.source, F.target
    order = list(C.objects)
    index = {x: i for i, x in enumerate(order)}
    pending = defaultdict(list)
    for f in C.morphisms:
        pending[max(index[C.dom(f)], index[C.cod(f)])].append(f)
    candidates = [isomorphisms(D, F.on_object(x), G.on_object(x)) for x in order]
    chosen: dict = {}

    def search(i: int) -> bool:
        if i == len(order):
            return True
        for comp in candidates[i]:
            chosen[order[i]] = comp
            if all(D.compose(G.on_morphism(f), chosen[C.dom(f)])
                   == D.compose(chosen[C.cod(f)], F.on_morphism(f)) for f in pending[i]):
                if search(i + 1):
                    return True
        chosen.pop(order[i], None)
        return False

    if not search(0):
        return None
    return NatTransformation(F, G, chosen, f"{F.name}≅{G.name}")
