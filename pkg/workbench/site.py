"""
site.py — pretopologies, site morphisms, and the structure they induce on S(F).

Covering families are ordered lists of morphisms into a common object. The
pretopology axioms ask for set membership; finite data compares families up
to cone-isomorphism instead (each leg replaced by its class of legs related
by an isomorphism over the base). ``strict=True`` compares raw id sets.

Also here: explicit additive enrichments (hom-group tables, zero morphisms,
biproduct witnesses) and the additive structure they induce on S(F).
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Mapping, Optional

from .errors import NoPullback, NotSiteMorphism, ParseError, ValidationReport, WorkbenchError
from .fincat import FinCategory, Functor, find_inverse, is_iso, isomorphisms
from .fixpoint import FixCategoryResult, fix_morphism_id, fixed_point_key
from .limits import PullbackResult, is_pullback, pullback, pullback_factor


# ── Pretopologies ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CoveringFamily:
    legs: tuple
    name: str = ""
    target: str = ""

    def __iter__(self):
        return iter(self.legs)

    def __len__(self) -> int:
        return len(self.legs)


class Pretopology:
    """cov(X) for every object X of a finite category."""

    def __init__(self, base: FinCategory, covers: Mapping[str, Iterable], name: str = ""):
        self.base = base
        self.name = name
        table = {}
        for obj in base.objects:
            families = []
            for i, fam in enumerate(covers.get(obj, ())):
                if isinstance(fam, CoveringFamily):
                    legs, fname = fam.legs, fam.name
                else:
                    legs, fname = tuple(fam), ""
                for leg in legs:
                    if not base.has_morphism(leg) or base.cod(leg) != obj:
                        raise ParseError(
                            f"pretopology {name!r}: leg {leg!r} of a family over {obj!r} "
                            f"does not end at {obj!r}")
                families.append(CoveringFamily(tuple(legs), fname or f"{obj}#{i}", obj))
            table[obj] = tuple(families)
        unknown = set(covers) - set(base.objects)
        if unknown:
            raise ParseError(f"pretopology {name!r}: covers for unknown objects {sorted(unknown)}")
        self._covers = table

    def families(self, obj: str) -> tuple:
        self.base.require_object(obj)
        return self._covers[obj]

    def family(self, obj: str, name: str) -> CoveringFamily:
        for fam in self.families(obj):
            if fam.name == name:
                return fam
        raise WorkbenchError(f"no covering family {name!r} over {obj!r}", (obj, name))

    def find(self, name: str) -> tuple:
        """(object, family) for a family name unique across the pretopology."""
        hits = [(obj, fam) for obj, fams in self._covers.items() for fam in fams if fam.name == name]
        if len(hits) != 1:
            raise WorkbenchError(f"covering family name {name!r} matches {len(hits)} families", (name,))
        return hits[0]

    def items(self):
        return self._covers.items()

    def covers_table(self) -> dict:
        return {obj: [list(f.legs) for f in fams] for obj, fams in self._covers.items()}

    def __repr__(self) -> str:
        total = sum(len(f) for f in self._covers.values())
        return f"Pretopology({self.name or '?'}: {total} families on {self.base!r})"


def trivial_pretopology(C: FinCategory, name: str = "trivial") -> Pretopology:
    """Only the isomorphism singletons cover."""
    covers = {x: [CoveringFamily((f,), f"iso:{f}") for y in C.objects for f in isomorphisms(C, y, x)]
              for x in C.objects}
    return Pretopology(C, covers, name)


def open_cover_pretopology(C: FinCategory, opens: Mapping[str, frozenset],
                           name: str = "opens") -> Pretopology:
    """Every family of sub-opens whose union is the open, on the inclusion poset."""
    covers = {}
    for x in C.objects:
        subs = sorted(u for u in C.objects if opens[u] <= opens[x])
        fams = []
        for r in range(len(subs) + 1):
            for chosen in combinations(subs, r):
                if frozenset().union(*(opens[u] for u in chosen)) == opens[x]:
                    legs = tuple(C.hom(u, x)[0] for u in chosen)
                    fams.append(CoveringFamily(legs, "+".join(chosen) or "empty"))
        covers[x] = fams
    return Pretopology(C, covers, name)


# ── Family matching ───────────────────────────────────────────────────────────

@lru_cache(maxsize=65536)
def leg_class(C: FinCategory, leg: str) -> str:
    """Least leg cone-isomorphic to ``leg`` over its codomain."""
    a = C.dom(leg)
    return min(C.compose(leg, j) for z in C.objects for j in isomorphisms(C, z, a))


def family_key(C: FinCategory, legs: Iterable[str], strict: bool = False) -> frozenset:
    if strict:
        return frozenset(legs)
    return frozenset(leg_class(C, leg) for leg in legs)


def families_match(C: FinCategory, V: Iterable[str], W: Iterable[str], strict: bool = False) -> bool:
    return family_key(C, V, strict) == family_key(C, W, strict)


class _Listing:
    """Family keys per object, computed once per check."""

    def __init__(self, P: Pretopology, strict: bool):
        self.strict = strict
        self.base = P.base
        self.keys = {x: {family_key(P.base, f.legs, strict) for f in fams} for x, fams in P.items()}

    def __call__(self, obj: str, legs: Iterable[str]) -> bool:
        return family_key(self.base, legs, self.strict) in self.keys[obj]


# ── Axioms ────────────────────────────────────────────────────────────────────

PullbackFn = Callable[[FinCategory, str, str], PullbackResult]


def check_pretopology(P: Pretopology, strict: bool = False,
                      pullback_fn: Optional[PullbackFn] = None) -> ValidationReport:
    C = P.base
    pb = pullback_fn or pullback
    listed = _Listing(P, strict)
    for x in C.objects:
        for y in C.objects:
            for f in isomorphisms(C, y, x):
                if not listed(x, (f,)):
                    return ValidationReport.failed(
                        "IsoSingletonMissing", f"{{{f}}} is not a cover of {x}", x, f)

    for x, fams in P.items():
        for fam in fams:
            for y in C.objects:
                for g in C.hom(y, x):
                    try:
                        pulled = [pb(C, leg, g).proj_right for leg in fam.legs]
                    except NoPullback as exc:
                        return ValidationReport.failed(
                            "NoPullback", f"{fam.name} cannot be pulled back along {g}: {exc}",
                            x, fam.name, g)
                    if not listed(y, pulled):
                        return ValidationReport.failed(
                            "BaseChangeMissing",
                            f"pullback of {fam.name} along {g} is not a cover of {y}",
                            x, fam.name, g)

    for x, fams in P.items():
        for fam in fams:
            states = {frozenset()}
            for leg in fam.legs:
                options = [family_key(C, [C.compose(leg, v) for v in sub.legs], strict)
                           for sub in P.families(C.dom(leg))]
                states = {s | o for s in states for o in options}
            for state in sorted(states, key=sorted):
                if state not in listed.keys[x]:
                    return ValidationReport.failed(
                        "CompositionMissing",
                        f"a refinement of {fam.name} through covers of its legs is not a cover of {x}",
                        x, fam.name, sorted(state))
    return ValidationReport.passed(
        "membership compared as sets of legs " + ("by id" if strict else "up to cone isomorphism"))


def comparison_morphism(F: Functor, f: str, g: str) -> str:
    """Canonical F(A ×_X B) → F(A) ×_{F X} F(B)."""
    C = F.source
    pb = pullback(C, f, g)
    target = pullback(C, F.on_morphism(f), F.on_morphism(g))
    return pullback_factor(C, target, F.on_morphism(pb.proj_left), F.on_morphism(pb.proj_right))


def check_site_morphism(F: Functor, P: Pretopology, strict: bool = False) -> ValidationReport:
    C = P.base
    if F.source != C or F.target != C:
        return ValidationReport.failed("CoverNotPreserved", "functor is not an endofunctor of the site")
    listed = _Listing(P, strict)
    for x, fams in P.items():
        for fam in fams:
            image = [F.on_morphism(leg) for leg in fam.legs]
            if not listed(F.on_object(x), image):
                return ValidationReport.failed(
                    "CoverNotPreserved", f"image of {fam.name} is not a cover of {F.on_object(x)}",
                    x, fam.name)
    for f in C.morphisms:
        for g in C.morphisms:
            if C.cod(f) != C.cod(g):
                continue
            try:
                pullback(C, f, g)
            except NoPullback:
                continue
            try:
                sigma = comparison_morphism(F, f, g)
            except NoPullback:
                return ValidationReport.failed(
                    "PullbackNotPreserved", f"F({f}), F({g}) have no pullback", f, g)
            if not is_iso(C, sigma):
                return ValidationReport.failed(
                    "PullbackNotPreserved", f"comparison {sigma} for ({f}, {g}) is not an isomorphism",
                    f, g, sigma)
    return ValidationReport.passed()


# ── Structure on S(F) ─────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FixPullbackResult:
    result: PullbackResult
    sigma: str
    base: PullbackResult


def fix_pullback(SF: FixCategoryResult, f: str, g: str) -> FixPullbackResult:
    """Pullback in S(F) built from the base pullback and σ = σ₂⁻¹∘σ₁."""
    F, S, C = SF.functor, SF.carrier, SF.functor.source
    if S.cod(f) != S.cod(g):
        raise WorkbenchError(f"{f} and {g} do not share a codomain in S(F)", (f, g))
    a2, a3 = SF.point(S.dom(f)), SF.point(S.dom(g))
    u, v = SF.underlying(f), SF.underlying(g)
    base = pullback(C, u, v)
    image = pullback(C, F.on_morphism(u), F.on_morphism(v))
    sigma1 = pullback_factor(C, image, C.compose(a2.iso, base.proj_left),
                             C.compose(a3.iso, base.proj_right))
    sigma2 = pullback_factor(C, image, F.on_morphism(base.proj_left), F.on_morphism(base.proj_right))
    sigma2_inv = find_inverse(C, sigma2)
    if sigma2_inv is None:
        raise NotSiteMorphism(f"comparison {sigma2} is not an isomorphism", (u, v, sigma2))
    sigma = C.compose(sigma2_inv, sigma1)
    vertex = fixed_point_key(base.vertex, sigma)
    left = fix_morphism_id(base.proj_left, vertex, S.dom(f))
    right = fix_morphism_id(base.proj_right, vertex, S.dom(g))
    if not (S.has_morphism(left) and S.has_morphism(right)):
        raise WorkbenchError("pullback projections are not fixed-point morphisms", (left, right))
    result = PullbackResult(vertex, left, right)
    if not is_pullback(S, f, g, result):
        raise WorkbenchError("lifted square is not a pullback in S(F)", (f, g))
    return FixPullbackResult(result, sigma, base)


def induced_fix_pretopology(F: Functor, P: Pretopology, SF: FixCategoryResult) -> Pretopology:
    """(X, α) is covered by every lift of a family listed in cov(X)."""
    S = SF.carrier
    by_leg: dict = {}
    for m in S.morphisms:
        by_leg.setdefault((SF.underlying(m), S.cod(m)), []).append(m)
    covers = {}
    for key, point in SF.points.items():
        fams = []
        for fam in P.families(point.object):
            choices = [by_leg.get((leg, key), []) for leg in fam.legs]
            for j, lift in enumerate(product(*choices)):
                fams.append(CoveringFamily(tuple(lift), f"{fam.name}@{key}#{j}"))
        covers[key] = fams
    return Pretopology(S, covers, name=f"{P.name}|S({F.name})")


def fix_pullback_fn(SF: FixCategoryResult) -> PullbackFn:
    return lambda _C, f, g: fix_pullback(SF, f, g).result


# ── Additive enrichment ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Biproduct:
    object: str
    inj_left: str
    inj_right: str
    proj_left: str
    proj_right: str


@dataclass
class AbEnrichment:
    base: FinCategory
    addition: dict = field(default_factory=dict)
    zero: dict = field(default_factory=dict)
    biproducts: dict = field(default_factory=dict)
    name: str = ""

    def add(self, f: str, g: str) -> str:
        C = self.base
        try:
            return self.addition[(C.dom(f), C.cod(f))][(f, g)]
        except KeyError:
            raise WorkbenchError(f"no sum for ({f}, {g})", (f, g)) from None

    def biproduct(self, x: str, y: str) -> Optional[Biproduct]:
        return self.biproducts.get((x, y))


def _check_hom_group(E: AbEnrichment, x: str, y: str) -> Optional[ValidationReport]:
    C = E.base
    hom = C.hom(x, y)
    table = E.addition.get((x, y), {})
    zero = E.zero.get((x, y))
    if zero not in hom:
        return ValidationReport.failed("HomNotGroup", f"Hom({x},{y}) has no zero", x, y)
    for f in hom:
        for g in hom:
            if table.get((f, g)) not in hom:
                return ValidationReport.failed("HomNotGroup", f"{f}+{g} is undefined", f, g)
    for f in hom:
        if table[(f, zero)] != f:
            return ValidationReport.failed("HomNotGroup", f"{zero} is not neutral for {f}", f)
        if not any(table[(f, g)] == zero for g in hom):
            return ValidationReport.failed("HomNotGroup", f"{f} has no negative", f)
        for g in hom:
            if table[(f, g)] != table[(g, f)]:
                return ValidationReport.failed("HomNotGroup", f"{f}+{g} is not commutative", f, g)
            for h in hom:
                if table[(table[(f, g)], h)] != table[(f, table[(g, h)])]:
                    return ValidationReport.failed("HomNotGroup", "addition is not associative", f, g, h)
    return None


def check_additive(E: AbEnrichment) -> ValidationReport:
    C = E.base
    for x in C.objects:
        for y in C.objects:
            failure = _check_hom_group(E, x, y)
            if failure is not None:
                return failure
    for x, y, z in product(C.objects, repeat=3):
        for f1 in C.hom(x, y):
            for f2 in C.hom(x, y):
                s = E.add(f1, f2)
                for g in C.hom(y, z):
                    if C.compose(g, s) != E.add(C.compose(g, f1), C.compose(g, f2)):
                        return ValidationReport.failed(
                            "CompositionNotBilinear", f"{g}∘({f1}+{f2}) is not additive", g, f1, f2)
        for g1 in C.hom(y, z):
            for g2 in C.hom(y, z):
                s = E.add(g1, g2)
                for f in C.hom(x, y):
                    if C.compose(s, f) != E.add(C.compose(g1, f), C.compose(g2, f)):
                        return ValidationReport.failed(
                            "CompositionNotBilinear", f"({g1}+{g2})∘{f} is not additive", g1, g2, f)
    for (x, y), bp in sorted(E.biproducts.items()):
        failure = _check_biproduct(E, x, y, bp)
        if failure is not None:
            return failure
    zero_obj = zero_object(E)
    if zero_obj is None:
        return ValidationReport.failed("ZeroObjectMissing", "no object has id = 0")
    return ValidationReport.passed(f"zero object {zero_obj}")


def _check_biproduct(E: AbEnrichment, x: str, y: str, bp: Biproduct) -> Optional[ValidationReport]:
    C = E.base
    s = bp.object
    typed = (C.dom(bp.inj_left) == x and C.cod(bp.inj_left) == s
             and C.dom(bp.inj_right) == y and C.cod(bp.inj_right) == s
             and C.dom(bp.proj_left) == s and C.cod(bp.proj_left) == x
             and C.dom(bp.proj_right) == s and C.cod(bp.proj_right) == y)
    if not typed:
        return ValidationReport.failed("BiproductLawFails", f"biproduct of ({x}, {y}) is ill-typed", x, y)
    laws = [
        C.compose(bp.proj_left, bp.inj_left) == C.identity(x),
        C.compose(bp.proj_right, bp.inj_right) == C.identity(y),
        C.compose(bp.proj_left, bp.inj_right) == E.zero[(y, x)],
        C.compose(bp.proj_right, bp.inj_left) == E.zero[(x, y)],
        E.add(C.compose(bp.inj_left, bp.proj_left),
              C.compose(bp.inj_right, bp.proj_right)) == C.identity(s),
    ]
    if not all(laws):
        return ValidationReport.failed("BiproductLawFails", f"biproduct laws fail for ({x}, {y})", x, y)
    return None


def zero_object(E: AbEnrichment) -> Optional[str]:
    return next((x for x in E.base.objects if E.zero.get((x, x)) == E.base.identity(x)), None)


def find_biproduct(E: AbEnrichment, x: str, y: str) -> Optional[Biproduct]:
    """A listed biproduct of (x, y), else the least one found by search."""
    listed = E.biproduct(x, y)
    if listed is not None:
        return listed
    C = E.base
    for s in C.objects:
        for il, ir, pl, pr in product(C.hom(x, s), C.hom(y, s), C.hom(s, x), C.hom(s, y)):
            bp = Biproduct(s, il, ir, pl, pr)
            if _check_biproduct(E, x, y, bp) is None:
                return bp
    return None


def sigma_xy(F: Functor, E: AbEnrichment, x: str, y: str) -> Optional[str]:
    """σ_XY = i1'∘F(p1) + i2'∘F(p2): F(X⊕Y) → F(X)⊕F(Y), or None without biproducts."""
    C = E.base
    bp = find_biproduct(E, x, y)
    image = find_biproduct(E, F.on_object(x), F.on_object(y))
    if bp is None or image is None:
        return None
    return E.add(C.compose(image.inj_left, F.on_morphism(bp.proj_left)),
                 C.compose(image.inj_right, F.on_morphism(bp.proj_right)))


def check_additive_functor(F: Functor, E: AbEnrichment) -> ValidationReport:
    C = E.base
    z = zero_object(E)
    if z is None:
        return ValidationReport.failed("ZeroObjectMissing", "no object has id = 0")
    fz = F.on_object(z)
    if E.zero.get((fz, fz)) != C.identity(fz):
        return ValidationReport.failed("FunctorNotAdditive", f"F({z}) = {fz} is not a zero object", z)
    for (x, y), table in sorted(E.addition.items()):
        for (f, g), h in sorted(table.items()):
            if F.on_morphism(h) != E.add(F.on_morphism(f), F.on_morphism(g)):
                return ValidationReport.failed(
                    "FunctorNotAdditive", f"F({f}+{g}) differs from F({f})+F({g})", f, g)
    for (x, y) in sorted(E.biproducts):
        sigma = sigma_xy(F, E, x, y)
        if sigma is None or not is_iso(C, sigma):
            return ValidationReport.failed(
                "FunctorNotAdditive", f"σ for ({x}, {y}) is not an isomorphism", x, y)
    return ValidationReport.passed()


def fix_additive(F: Functor, E: AbEnrichment, SF: FixCategoryResult) -> AbEnrichment:
    """Restrict the hom groups to S(F) and build (X⊕Y, σ⁻¹∘(α⊕β)) biproducts."""
    C, S = E.base, SF.carrier

    def lift(f: str, a: str, b: str) -> str:
        mid = fix_morphism_id(f, a, b)
        if not S.has_morphism(mid):
            raise WorkbenchError(f"{f} is not a fixed-point morphism {a} -> {b}", (f, a, b))
        return mid

    addition, zero = {}, {}
    for a in S.objects:
        for b in S.objects:
            hom = S.hom(a, b)
            zero[(a, b)] = lift(E.zero[(SF.point(a).object, SF.point(b).object)], a, b)
            addition[(a, b)] = {(m1, m2): lift(E.add(SF.underlying(m1), SF.underlying(m2)), a, b)
                                for m1 in hom for m2 in hom}
    biproducts = {}
    for a in S.objects:
        for b in S.objects:
            pa, pb = SF.point(a), SF.point(b)
            bp = E.biproduct(pa.object, pb.object)
            image = E.biproduct(F.on_object(pa.object), F.on_object(pb.object))
            if bp is None or image is None:
                continue
            sigma = sigma_xy(F, E, pa.object, pb.object)
            sigma_inv = find_inverse(C, sigma)
            if sigma_inv is None:
                raise WorkbenchError(f"σ for ({pa.object}, {pb.object}) is not invertible")
            alpha_beta = E.add(C.compose(image.inj_left, C.compose(pa.iso, bp.proj_left)),
                               C.compose(image.inj_right, C.compose(pb.iso, bp.proj_right)))
            s = fixed_point_key(bp.object, C.compose(sigma_inv, alpha_beta))
            biproducts[(a, b)] = Biproduct(s, lift(bp.inj_left, a, s), lift(bp.inj_right, b, s),
                                           lift(bp.proj_left, s, a), lift(bp.proj_right, s, b))
    return AbEnrichment(S, addition, zero, biproducts, name=f"{E.name}|S({F.name})")
