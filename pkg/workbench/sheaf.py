"""
sheaf.py — presheaves of presented abelian groups on a finite site.

Restrictions are contravariant: a morphism f: X → Y carries μ(f): μ(Y) → μ(X).
Čech cochains are indexed by every tuple of cover legs, repetitions
included, and the iterated fibre products are left-associated canonical
pullbacks. Every cohomological verdict here is truncated at a degree bound
and says so.
"""

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .abgrp import (
    AbGroupInvariants,
    AbHom,
    IntMatrix,
    PresentedAbGroup,
    check_complex,
    direct_sum,
    equalizer,
    hom_is_well_defined,
    homology_at,
    homs_equal,
    identity_hom,
    is_iso_hom,
    is_short_exact,
    lift_through,
)
from .errors import (
    DegreeOutOfRange,
    NotEndofunctor,
    NotExactInput,
    NotSiteMorphism,
    ValidationReport,
)
from .fincat import FinCategory, Functor, find_inverse
from .limits import pullback, pullback_factor
from .site import CoveringFamily, Pretopology, check_site_morphism


# ── Presheaves ────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Presheaf:
    site: Pretopology
    values: Mapping[str, PresentedAbGroup]
    restrictions: Mapping[str, AbHom]
    name: str = ""

    @property
    def base(self) -> FinCategory:
        return self.site.base

    def __call__(self, obj: str) -> PresentedAbGroup:
        return self.values[obj]

    def restrict(self, mid: str) -> AbHom:
        return self.restrictions[mid]


def validate_presheaf(mu: Presheaf) -> ValidationReport:
    C = mu.base
    for x in C.objects:
        if x not in mu.values:
            return ValidationReport.failed("RestrictionIllTyped", f"no value at {x}", x)
    for f in C.morphisms:
        r = mu.restrictions.get(f)
        if r is None:
            return ValidationReport.failed("RestrictionIllTyped", f"no restriction along {f}", f)
        if r.source != mu.values[C.cod(f)] or r.target != mu.values[C.dom(f)]:
            return ValidationReport.failed(
                "RestrictionIllTyped", f"restriction along {f} is not μ(cod) -> μ(dom)", f)
        if not hom_is_well_defined(r):
            return ValidationReport.failed(
                "RestrictionIllTyped", f"restriction along {f} does not respect relations", f)
    for x in C.objects:
        if not homs_equal(mu.restrictions[C.identity(x)], identity_hom(mu.values[x])):
            return ValidationReport.failed("FunctorialityFails", f"μ(id_{x}) is not the identity", x)
    for (g, f), h in sorted(C.composition_table().items()):
        if not homs_equal(mu.restrictions[h], mu.restrictions[f] @ mu.restrictions[g]):
            return ValidationReport.failed(
                "FunctorialityFails", f"μ({g}∘{f}) differs from μ({f})∘μ({g})", g, f)
    return ValidationReport.passed()


def constant_presheaf(site: Pretopology, G: PresentedAbGroup, name: str = "") -> Presheaf:
    C = site.base
    ident = identity_hom(G)
    return Presheaf(site, {x: G for x in C.objects}, {m: ident for m in C.morphisms},
                    name or f"const({G.invariants})")


def pullback_presheaf(mu: Presheaf, F: Functor) -> Presheaf:
    """F*μ = μ∘F."""
    C = mu.base
    if F.source != C or F.target != C:
        raise NotEndofunctor(f"functor {F.name!r} is not an endofunctor of the site", (F.name,))
    return Presheaf(mu.site,
                    {x: mu.values[F.on_object(x)] for x in C.objects},
                    {m: mu.restrictions[F.on_morphism(m)] for m in C.morphisms},
                    f"{mu.name}∘{F.name}")


@dataclass(frozen=True, eq=False)
class PresheafMorphism:
    source: Presheaf
    target: Presheaf
    components: Mapping[str, AbHom]
    name: str = ""


def validate_presheaf_morphism(theta: PresheafMorphism) -> ValidationReport:
    mu, nu = theta.source, theta.target
    C = mu.base
    for x in C.objects:
        comp = theta.components.get(x)
        if comp is None or comp.source != mu.values[x] or comp.target != nu.values[x]:
            return ValidationReport.failed("ComponentIllTyped", f"component at {x} is not μ(X) -> ν(X)", x)
        if not hom_is_well_defined(comp):
            return ValidationReport.failed("ComponentIllTyped", f"component at {x} is not well defined", x)
    for f in C.morphisms:
        x, y = C.dom(f), C.cod(f)
        left = nu.restrictions[f] @ theta.components[y]
        right = theta.components[x] @ mu.restrictions[f]
        if not homs_equal(left, right):
            return ValidationReport.failed("NaturalityFails", f"square at {f} does not commute", f)
    return ValidationReport.passed()


def pullback_presheaf_morphism(theta: PresheafMorphism, F: Functor) -> PresheafMorphism:
    C = theta.source.base
    return PresheafMorphism(pullback_presheaf(theta.source, F), pullback_presheaf(theta.target, F),
                            {x: theta.components[F.on_object(x)] for x in C.objects},
                            f"{theta.name}∘{F.name}")


# ── Block matrices over direct sums ───────────────────────────────────────────

def _block_hom(source: Sequence[PresentedAbGroup], target: Sequence[PresentedAbGroup],
               blocks: Mapping[tuple, IntMatrix], src_sum=None, tgt_sum=None) -> AbHom:
    """Assemble ⊕source → ⊕target from blocks[(target index, source index)]."""
    src_sum = src_sum or direct_sum(source).group
    tgt_sum = tgt_sum or direct_sum(target).group
    col_off = [0]
    for g in source:
        col_off.append(col_off[-1] + g.generators)
    row_off = [0]
    for g in target:
        row_off.append(row_off[-1] + g.generators)
    rows = [[0] * col_off[-1] for _ in range(row_off[-1])]
    for (r, c), block in blocks.items():
        for i, brow in enumerate(block.entries):
            out = rows[row_off[r] + i]
            for j, v in enumerate(brow):
                if v:
                    out[col_off[c] + j] += v
    return AbHom(src_sum, tgt_sum, IntMatrix.from_rows(rows, col_off[-1]))


# ── Sheaf condition ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SheafReport:
    is_sheaf: bool
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.is_sheaf

    def as_dict(self) -> dict:
        data = {"is_sheaf": self.is_sheaf}
        if self.witness:
            data["witness"] = list(self.witness)
        return data


def _sheaf_condition(mu: Presheaf, obj: str, cover: CoveringFamily) -> bool:
    C = mu.base
    legs = cover.legs
    parts = [mu.values[C.dom(u)] for u in legs]
    pairs = [(i, j) for i in range(len(legs)) for j in range(len(legs))]
    pbs = {(i, j): pullback(C, legs[i], legs[j]) for i, j in pairs}
    overlaps = [mu.values[pbs[p].vertex] for p in pairs]
    whole = [mu.values[obj]]
    e = _block_hom(whole, parts, {(i, 0): mu.restrictions[u].matrix for i, u in enumerate(legs)})
    first = _block_hom(parts, overlaps,
                       {(k, i): mu.restrictions[pbs[(i, j)].proj_left].matrix
                        for k, (i, j) in enumerate(pairs)}, e.target)
    second = _block_hom(parts, overlaps,
                        {(k, j): mu.restrictions[pbs[(i, j)].proj_right].matrix
                         for k, (i, j) in enumerate(pairs)}, e.target, first.target)
    _, inclusion = equalizer(first, second)
    comparison = lift_through(inclusion, AbHom(mu.values[obj], inclusion.target, e.matrix))
    return comparison is not None and is_iso_hom(comparison)


def is_sheaf(mu: Presheaf) -> SheafReport:
    """μ(X) must be the equalizer of Πμ(X_i) ⇉ Πμ(X_i ×_X X_j) for every listed cover."""
    for obj, fams in mu.site.items():
        for cover in fams:
            if not _sheaf_condition(mu, obj, cover):
                return SheafReport(False, (obj, cover.name))
    return SheafReport(True)


# ── Čech complexes ────────────────────────────────────────────────────────────

class _FibreTower:
    """Left-associated iterated pullbacks of the legs of one family."""

    def __init__(self, C: FinCategory, legs: Sequence[str]):
        self.C = C
        self.legs = tuple(legs)
        self._cache: dict = {}

    def vertex(self, t: tuple) -> tuple:
        """(object, leg to the base, projections to each factor)."""
        if t in self._cache:
            return self._cache[t]
        C = self.C
        if len(t) == 1:
            u = self.legs[t[0]]
            result = (C.dom(u), u, (C.identity(C.dom(u)),))
        else:
            obj, leg, projs = self.vertex(t[:-1])
            pb = pullback(C, leg, self.legs[t[-1]])
            projs = tuple(C.compose(p, pb.proj_left) for p in projs) + (pb.proj_right,)
            result = (pb.vertex, C.compose(leg, pb.proj_left), projs)
        self._cache[t] = result
        return result

    def factor(self, t: tuple, maps: Sequence[str]) -> str:
        """The morphism into vertex(t) whose factor projections are ``maps``."""
        C = self.C
        if len(t) == 1:
            return maps[0]
        obj, leg, _ = self.vertex(t[:-1])
        pb = pullback(C, leg, self.legs[t[-1]])
        return pullback_factor(C, pb, self.factor(t[:-1], maps[:-1]), maps[-1])

    def face(self, t: tuple, k: int) -> str:
        """k̂: vertex(t) → vertex(t without position k)."""
        _, _, projs = self.vertex(t)
        return self.factor(t[:k] + t[k + 1:], projs[:k] + projs[k + 1:])


@dataclass(frozen=True, eq=False)
class CechComplex:
    cover: CoveringFamily
    tuples: tuple
    groups: tuple
    differentials: tuple
    max_degree: int

    def cohomology(self, n: int) -> AbGroupInvariants:
        if not 0 <= n <= self.max_degree:
            raise DegreeOutOfRange(f"degree {n} outside 0..{self.max_degree}", (n,))
        return homology_at(self.differentials, n, checked=True)


def cech_complex(cover: CoveringFamily, mu: Presheaf, N: int) -> CechComplex:
    """C^0 … C^{N+1} with (d s)_t = Σ_k (−1)^k μ(k̂)(s_{t without k})."""
    if N < 0:
        raise DegreeOutOfRange("Čech degree bound must be non-negative", (N,))
    C = mu.base
    tower = _FibreTower(C, cover.legs)
    n = len(cover.legs)
    tuples, parts, sums = [], [], []
    for q in range(N + 2):
        ts = list(product(range(n), repeat=q + 1))
        tuples.append(tuple(ts))
        parts.append([mu.values[tower.vertex(t)[0]] for t in ts])
        sums.append(direct_sum(parts[-1]).group)
    differentials = []
    for q in range(N + 1):
        index = {t: i for i, t in enumerate(tuples[q])}
        blocks = {}
        for r, t in enumerate(tuples[q + 1]):
            for k in range(q + 2):
                c = index[t[:k] + t[k + 1:]]
                block = mu.restrictions[tower.face(t, k)].matrix
                if k % 2:
                    block = -block
                blocks[(r, c)] = block + blocks[(r, c)] if (r, c) in blocks else block
        differentials.append(_block_hom(parts[q], parts[q + 1], blocks, sums[q], sums[q + 1]))
    check_complex(differentials)
    return CechComplex(cover, tuple(tuples), tuple(sums), tuple(differentials), N)


def cech_cohomology(cover: CoveringFamily, mu: Presheaf, n: int) -> AbGroupInvariants:
    if n < 0:
        raise DegreeOutOfRange(f"degree {n} is negative", (n,))
    return cech_complex(cover, mu, n).cohomology(n)


def cech_cohomology_all(cover: CoveringFamily, mu: Presheaf, N: int) -> list:
    cx = cech_complex(cover, mu, N)
    return [cx.cohomology(n) for n in range(N + 1)]


def image_family(F: Functor, cover: CoveringFamily) -> CoveringFamily:
    return CoveringFamily(tuple(F.on_morphism(u) for u in cover.legs),
                          f"{F.name}({cover.name})", F.on_object(cover.target))


# ── Flabbiness ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FlabbyReport:
    flabby: bool
    degree_bound: int
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.flabby

    def as_dict(self) -> dict:
        data = {"flabby": self.flabby, "degree_bound": self.degree_bound,
                "verdict": "degree-truncated"}
        if self.witness:
            data["witness"] = list(self.witness)
        return data


def is_flabby(mu: Presheaf, N: int) -> FlabbyReport:
    """H^n(U, μ) = 0 for every listed cover and 0 < n ≤ N."""
    covers = sorted(((len(f), obj, f.name, f) for obj, fams in mu.site.items() for f in fams),
                    key=lambda c: c[:3])
    for _, obj, name, fam in covers:
        cx = cech_complex(fam, mu, N)
        for n in range(1, N + 1):
            h = cx.cohomology(n)
            if not h.is_zero:
                return FlabbyReport(False, N, (obj, name, n, h.as_list()))
    return FlabbyReport(True, N)


# ── Comparison along a site morphism ──────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class ComparisonReport:
    maps: tuple
    isomorphisms: bool
    commutes: bool
    cohomology: tuple

    @property
    def ok(self) -> bool:
        return self.isomorphisms and self.commutes and all(
            a == b for a, b in self.cohomology)

    def as_dict(self) -> dict:
        return {"isomorphisms": self.isomorphisms, "commutes": self.commutes,
                "cohomology": [{"degree": n, "pulled_back": a.as_list(), "image_cover": b.as_list()}
                               for n, (a, b) in enumerate(self.cohomology)],
                "ok": self.ok}


def comparison_iso(cover: CoveringFamily, mu: Presheaf, F: Functor, N: int = 3,
                   strict: bool = False) -> ComparisonReport:
    """φ_q: C^q(U, μ∘F) → C^q(F(U), μ), assembled from the pullback comparison isos."""
    if not check_site_morphism(F, mu.site, strict):
        raise NotSiteMorphism(f"functor {F.name!r} is not a morphism of the site", (F.name,))
    C = mu.base
    pulled = pullback_presheaf(mu, F)
    image = image_family(F, cover)
    source_cx = cech_complex(cover, pulled, N)
    target_cx = cech_complex(image, mu, N)
    tower = _FibreTower(C, cover.legs)
    image_tower = _FibreTower(C, image.legs)
    maps = []
    for q in range(N + 2):
        blocks = {}
        parts_src = [pulled.values[tower.vertex(t)[0]] for t in source_cx.tuples[q]]
        parts_tgt = [mu.values[image_tower.vertex(t)[0]] for t in target_cx.tuples[q]]
        for i, t in enumerate(source_cx.tuples[q]):
            _, _, projs = tower.vertex(t)
            c = image_tower.factor(t, [F.on_morphism(p) for p in projs])
            c_inv = find_inverse(C, c)
            if c_inv is None:
                raise NotSiteMorphism(f"comparison {c} at {t} is not an isomorphism", (c,))
            blocks[(i, i)] = mu.restrictions[c_inv].matrix
        maps.append(_block_hom(parts_src, parts_tgt, blocks,
                               source_cx.groups[q], target_cx.groups[q]))
    isos = all(is_iso_hom(phi) for phi in maps)
    commutes = all(homs_equal(target_cx.differentials[q] @ maps[q], maps[q + 1] @ source_cx.differentials[q])
                   for q in range(N + 1))
    cohomology = tuple((source_cx.cohomology(n), target_cx.cohomology(n)) for n in range(N + 1))
    return ComparisonReport(tuple(maps), isos, commutes, cohomology)


# ── Čech-level cohomological fixed points ─────────────────────────────────────

@dataclass(frozen=True)
class CechFixedPointReport:
    obj: str
    declared: bool
    bridge_consistent: bool
    degree_bound: int
    rows: tuple = ()

    def as_dict(self) -> dict:
        return {"object": self.obj,
                "verdict": "Čech-cohomological fixed point (relative)",
                "declared": self.declared, "bridge_consistent": self.bridge_consistent,
                "degree_bound": self.degree_bound, "rows": list(self.rows)}


def cech_fixed_point_report(obj: str, F: Functor, test_presheaves: Sequence[Presheaf],
                            N: int = 3, strict: bool = False) -> CechFixedPointReport:
    """Compare H^n(U, μ), H^n(U, μ∘F) and H^n(F(U), μ) over every cover of obj."""
    declared, bridge = True, True
    rows = []
    for mu in test_presheaves:
        for cover in mu.site.families(obj):
            comparison = comparison_iso(cover, mu, F, N, strict)
            own = cech_cohomology_all(cover, mu, N)
            for n in range(N + 1):
                pulled, image = comparison.cohomology[n]
                same_image = own[n] == image
                same_pulled = own[n] == pulled
                declared = declared and same_image
                bridge = bridge and comparison.ok and (same_pulled == same_image)
                rows.append({"presheaf": mu.name, "cover": cover.name, "degree": n,
                             "H": own[n].as_list(), "H_pulled": pulled.as_list(),
                             "H_image": image.as_list()})
    return CechFixedPointReport(obj, declared, bridge, N, tuple(rows))


# ── Exactness of F* ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ExactnessReport:
    preserved: bool
    failures: tuple = ()

    def as_dict(self) -> dict:
        data = {"preserved": self.preserved}
        if self.failures:
            data["failures"] = list(self.failures)
        return data


def _pointwise_exact(i: PresheafMorphism, p: PresheafMorphism) -> list:
    return [x for x in i.source.base.objects
            if not is_short_exact(i.components[x], p.components[x])]


def check_exactness_preserved(F: Functor, seq: tuple) -> ExactnessReport:
    """A pointwise short exact sequence stays exact after F*."""
    i, p = seq
    for theta in (i, p):
        report = validate_presheaf_morphism(theta)
        if not report:
            raise NotExactInput(f"{theta.name or 'morphism'}: {report.message}", report.witness)
    bad = _pointwise_exact(i, p)
    if bad:
        raise NotExactInput(f"sequence is not short exact at {bad[0]}", (bad[0],))
    pulled = _pointwise_exact(pullback_presheaf_morphism(i, F), pullback_presheaf_morphism(p, F))
    return ExactnessReport(not pulled, tuple(pulled))
