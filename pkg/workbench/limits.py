"""
limits.py — pullbacks, pushouts, slices and the functors between them.

Pullbacks are found by exhaustive cone search; among the universal cones the
one with the least (vertex, proj_left, proj_right) triple is returned, so
every derived functor is deterministic. Pushouts are pullbacks in the
opposite category.

Slice carriers use the base morphism id as object id and "[h|f1>f2]" for the
triangle with leg h from f1 to f2.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import NoPullback, NoPushout, WorkbenchError
from .fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    are_isomorphic,
    compose_functors,
    find_inverse,
    identity_functor,
    is_faithful,
    is_full,
    is_iso,
    opposite,
    validate_nat_transformation,
)


# ── Pullbacks and pushouts ────────────────────────────────────────────────────

@dataclass(frozen=True)
class PullbackResult:
    vertex: str
    proj_left: str
    proj_right: str


@dataclass(frozen=True)
class PushoutResult:
    vertex: str
    inj_left: str
    inj_right: str


def _cones(C: FinCategory, f: str, g: str) -> list:
    a, b = C.dom(f), C.dom(g)
    return [(p_obj, p, q)
            for p_obj in C.objects
            for p in C.hom(p_obj, a)
            for q in C.hom(p_obj, b)
            if C.compose(f, p) == C.compose(g, q)]


def _factorizations(C: FinCategory, cone: tuple, vertex: str, left: str, right: str) -> list:
    p_obj, p, q = cone
    return [u for u in C.hom(p_obj, vertex)
            if C.compose(left, u) == p and C.compose(right, u) == q]


@lru_cache(maxsize=4096)
def pullback(C: FinCategory, f: str, g: str) -> PullbackResult:
    """Canonical pullback of the cospan f → · ← g; proj_left lands in dom(f)."""
    if C.cod(f) != C.cod(g):
        raise WorkbenchError(f"{f} and {g} do not share a codomain", (f, g))
    cones = _cones(C, f, g)
    for vertex, left, right in cones:
        if all(len(_factorizations(C, cone, vertex, left, right)) == 1 for cone in cones):
            return PullbackResult(vertex, left, right)
    raise NoPullback(f"no pullback of {f} and {g}", (f, g))


def is_pullback(C: FinCategory, f: str, g: str, candidate: PullbackResult) -> bool:
    """True when the candidate square commutes and every cone factors through it uniquely."""
    vertex, left, right = candidate.vertex, candidate.proj_left, candidate.proj_right
    if C.compose(f, left) != C.compose(g, right):
        return False
    return all(len(_factorizations(C, cone, vertex, left, right)) == 1
               for cone in _cones(C, f, g))


def pullback_factor(C: FinCategory, pb: PullbackResult, left: str, right: str) -> str:
    """The unique morphism into the pullback vertex through which (left, right) factors."""
    found = _factorizations(C, (C.dom(left), left, right), pb.vertex, pb.proj_left, pb.proj_right)
    if len(found) != 1:
        raise WorkbenchError("cone does not factor uniquely through the pullback", (left, right))
    return found[0]


_opposite = lru_cache(maxsize=256)(opposite)


def pushout(C: FinCategory, f: str, g: str) -> PushoutResult:
    """Canonical pushout of the span f ← · → g; inj_left leaves cod(f)."""
    if C.dom(f) != C.dom(g):
        raise WorkbenchError(f"{f} and {g} do not share a domain", (f, g))
    try:
        pb = pullback(_opposite(C), f, g)
    except NoPullback:
        raise NoPushout(f"no pushout of {f} and {g}", (f, g)) from None
    return PushoutResult(pb.vertex, pb.proj_left, pb.proj_right)


def pushout_factor(C: FinCategory, po: PushoutResult, left: str, right: str) -> str:
    return pullback_factor(_opposite(C), PullbackResult(po.vertex, po.inj_left, po.inj_right),
                           left, right)


# ── Slices ────────────────────────────────────────────────────────────────────

def triangle_id(leg: str, source: str, target: str) -> str:
    return f"[{leg}|{source}>{target}]"


@dataclass(frozen=True)
class SliceCategory:
    base: FinCategory
    apex: str
    carrier: FinCategory
    projection: Functor
    kind: str = "slice"
    legs: dict = field(default_factory=dict, compare=False)


def slice_category(C: FinCategory, X: str) -> SliceCategory:
    """C/X: morphisms into X and commuting triangles over X."""
    return _slice(C, X, over=True)


def coslice_category(C: FinCategory, X: str) -> SliceCategory:
    """X/C: morphisms out of X and commuting triangles under X."""
    return _slice(C, X, over=False)


@lru_cache(maxsize=512)
def _slice(C: FinCategory, X: str, over: bool) -> SliceCategory:
    C.require_object(X)
    end = C.dom if over else C.cod
    objects = [f for f in C.morphisms if (C.cod(f) if over else C.dom(f)) == X]
    morphisms, legs = [], {}
    for f1 in objects:
        for f2 in objects:
            for h in C.hom(end(f1), end(f2)):
                ok = C.compose(f2, h) == f1 if over else C.compose(h, f1) == f2
                if ok:
                    mid = triangle_id(h, f1, f2)
                    morphisms.append((mid, f1, f2))
                    legs[mid] = h
    identities = {f: triangle_id(C.identity(end(f)), f, f) for f in objects}
    composition = {}
    for m1, s1, t1 in morphisms:
        for m2, s2, t2 in morphisms:
            if s2 == t1:
                composition[(m2, m1)] = triangle_id(C.compose(legs[m2], legs[m1]), s1, t2)
    name = f"{C.name}/{X}" if over else f"{X}/{C.name}"
    carrier = FinCategory(objects, morphisms, identities, composition, name=name)
    projection = Functor(carrier, C, {f: end(f) for f in objects}, legs,
                         name=f"proj_{name}")
    return SliceCategory(C, X, carrier, projection, "slice" if over else "coslice", legs)


def base_change(C: FinCategory, sigma: str) -> Functor:
    """τ⁻¹(σ): C/cod σ → C/dom σ, pulling every object back along σ."""
    X, Y = C.dom(sigma), C.cod(sigma)
    over_y, over_x = slice_category(C, Y), slice_category(C, X)
    obj_map, pbs = {}, {}
    for g1 in over_y.carrier.objects:
        try:
            pbs[g1] = pullback(C, sigma, g1)
        except NoPullback as exc:
            raise NoPullback(f"base change along {sigma}: no pullback with {g1}",
                             (sigma, g1)) from exc
        obj_map[g1] = pbs[g1].proj_left
    mor_map = {}
    for m in over_y.carrier.morphisms:
        g1, g2, h = over_y.carrier.dom(m), over_y.carrier.cod(m), over_y.legs[m]
        src, tgt = pbs[g1], pbs[g2]
        psi = pullback_factor(C, tgt, src.proj_left, C.compose(h, src.proj_right))
        mor_map[m] = triangle_id(psi, obj_map[g1], obj_map[g2])
    return Functor(over_y.carrier, over_x.carrier, obj_map, mor_map, name=f"basechange({sigma})")


def cobase_change(C: FinCategory, sigma: str) -> Functor:
    """s⁻¹(σ): dom σ/C → cod σ/C, pushing every object out along σ."""
    X, Y = C.dom(sigma), C.cod(sigma)
    under_x, under_y = coslice_category(C, X), coslice_category(C, Y)
    obj_map, pos = {}, {}
    for g1 in under_x.carrier.objects:
        try:
            pos[g1] = pushout(C, sigma, g1)
        except NoPushout as exc:
            raise NoPushout(f"cobase change along {sigma}: no pushout with {g1}",
                            (sigma, g1)) from exc
        obj_map[g1] = pos[g1].inj_left
    mor_map = {}
    for m in under_x.carrier.morphisms:
        g1, g2, h = under_x.carrier.dom(m), under_x.carrier.cod(m), under_x.legs[m]
        src, tgt = pos[g1], pos[g2]
        psi = pushout_factor(C, src, tgt.inj_left, C.compose(tgt.inj_right, h))
        mor_map[m] = triangle_id(psi, obj_map[g1], obj_map[g2])
    return Functor(under_x.carrier, under_y.carrier, obj_map, mor_map, name=f"cobasechange({sigma})")


def postcompose(C: FinCategory, sigma: str) -> Functor:
    """σ̄: C/dom σ → C/cod σ, f ↦ σ∘f."""
    src, tgt = slice_category(C, C.dom(sigma)), slice_category(C, C.cod(sigma))
    obj_map = {f: C.compose(sigma, f) for f in src.carrier.objects}
    mor_map = {m: triangle_id(src.legs[m], obj_map[src.carrier.dom(m)], obj_map[src.carrier.cod(m)])
               for m in src.carrier.morphisms}
    return Functor(src.carrier, tgt.carrier, obj_map, mor_map, name=f"post({sigma})")


def precompose(C: FinCategory, sigma: str) -> Functor:
    """σ̃: cod σ/C → dom σ/C, g ↦ g∘σ."""
    src, tgt = coslice_category(C, C.cod(sigma)), coslice_category(C, C.dom(sigma))
    obj_map = {g: C.compose(g, sigma) for g in src.carrier.objects}
    mor_map = {m: triangle_id(src.legs[m], obj_map[src.carrier.dom(m)], obj_map[src.carrier.cod(m)])
               for m in src.carrier.morphisms}
    return Functor(src.carrier, tgt.carrier, obj_map, mor_map, name=f"pre({sigma})")


# ── Adjunctions and equivalences ──────────────────────────────────────────────

@dataclass(frozen=True)
class AdjunctionReport:
    found: bool
    unit: Optional[NatTransformation] = None
    counit: Optional[NatTransformation] = None
    reason: str = ""

    def as_dict(self) -> dict:
        data = {"found": self.found}
        if self.unit is not None:
            data["unit"] = dict(sorted(self.unit.components.items()))
            data["counit"] = dict(sorted(self.counit.components.items()))
        if self.reason:
            data["reason"] = self.reason
        return data


def _is_universal(L: Functor, R: Functor, a: str, eta: str) -> bool:
    """g ↦ R(g)∘η must be a bijection Hom(L a, b) → Hom(a, R b) for every b."""
    A, B = L.source, L.target
    for b in B.objects:
        images = {A.compose(R.on_morphism(g), eta) for g in B.hom(L.on_object(a), b)}
        if len(images) != len(B.hom(L.on_object(a), b)) or len(images) != len(A.hom(a, R.on_object(b))):
            return False
    return True


def check_adjunction(L: Functor, R: Functor) -> AdjunctionReport:
    """Search for L ⊣ R via a natural family of universal arrows a → R L a."""
    A, B = L.source, L.target
    if R.source != B or R.target != A:
        return AdjunctionReport(False, reason="functors are not opposed")
    order = list(A.objects)
    candidates = [[eta for eta in A.hom(a, R.on_object(L.on_object(a))) if _is_universal(L, R, a, eta)]
                  for a in order]
    index = {a: i for i, a in enumerate(order)}
    squares = {}
    for f in A.morphisms:
        squares.setdefault(max(index[A.dom(f)], index[A.cod(f)]), []).append(f)
    chosen = {}

    def natural(f: str) -> bool:
        x, y = A.dom(f), A.cod(f)
        return (A.compose(R.on_morphism(L.on_morphism(f)), chosen[x])
                == A.compose(chosen[y], f))

    def search(i: int) -> bool:
        if i == len(order):
            return True
        for eta in candidates[i]:
            chosen[order[i]] = eta
            if all(natural(f) for f in squares.get(i, ())) and search(i + 1):
                return True
        chosen.pop(order[i], None)
        return False

    if not search(0):
        return AdjunctionReport(False, reason="no natural family of universal arrows")
    RL = compose_functors(R, L, name=f"{R.name}{L.name}")
    unit = NatTransformation(identity_functor(A), RL, chosen, "unit")
    counit_components = {}
    for b in B.objects:
        rb = R.on_object(b)
        eta_rb = chosen[rb]
        counit_components[b] = next(
            e for e in B.hom(L.on_object(rb), b)
            if A.compose(R.on_morphism(e), eta_rb) == A.identity(rb))
    LR = compose_functors(L, R, name=f"{L.name}{R.name}")
    counit = NatTransformation(LR, identity_functor(B), counit_components, "counit")
    if not validate_nat_transformation(counit):
        return AdjunctionReport(False, reason="derived counit is not natural")
    for a in A.objects:
        la = L.on_object(a)
        if B.compose(counit_components[la], L.on_morphism(chosen[a])) != B.identity(la):
            return AdjunctionReport(False, reason=f"triangle identity fails at {a}")
    return AdjunctionReport(True, unit, counit)


@dataclass(frozen=True)
class EquivalenceReport:
    fully_faithful: bool
    essentially_surjective: bool

    @property
    def equivalence(self) -> bool:
        return self.fully_faithful and self.essentially_surjective

    def as_dict(self) -> dict:
        return {"fully_faithful": self.fully_faithful,
                "essentially_surjective": self.essentially_surjective,
                "equivalence": self.equivalence}


def is_equivalence(F: Functor) -> EquivalenceReport:
    D = F.target
    images = {F.on_object(x) for x in F.source.objects}
    surjective = all(any(are_isomorphic(D, y, z) for z in images) for y in D.objects)
    return EquivalenceReport(is_full(F) and is_faithful(F), surjective)


# ── Balanced categories ───────────────────────────────────────────────────────

def is_mono(C: FinCategory, f: str) -> bool:
    x = C.dom(f)
    for z in C.objects:
        arrows = C.hom(z, x)
        if len({C.compose(f, g) for g in arrows}) != len(arrows):
            return False
    return True


def is_epi(C: FinCategory, f: str) -> bool:
    y = C.cod(f)
    for z in C.objects:
        arrows = C.hom(y, z)
        if len({C.compose(h, f) for h in arrows}) != len(arrows):
            return False
    return True


@dataclass(frozen=True)
class BalancedReport:
    balanced: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.balanced


def is_balanced(C: FinCategory) -> BalancedReport:
    for f in C.morphisms:
        if is_mono(C, f) and is_epi(C, f) and not is_iso(C, f):
            return BalancedReport(False, f)
    return BalancedReport(True)


# ── Fixed-point criterion ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class CriterionReport:
    sigma_iso: bool
    tau_equiv: bool
    s_equiv: bool
    balanced: bool

    @property
    def consistent(self) -> bool:
        """Forward implication always; the converse only for balanced categories."""
        both = self.tau_equiv and self.s_equiv
        if self.sigma_iso and not both:
            return False
        if self.balanced and both and not self.sigma_iso:
            return False
        return True

    def as_dict(self) -> dict:
        return {"sigma_iso": self.sigma_iso, "tau_equiv": self.tau_equiv,
                "s_equiv": self.s_equiv, "balanced": self.balanced,
                "consistent": self.consistent}


def fixpoint_criterion(C: FinCategory, F: Functor, X: str, sigma: str) -> CriterionReport:
    """Decide whether σ: X → F(X) is a fixed-point witness via the slice equivalences."""
    C.require_object(X)
    if C.dom(sigma) != X or C.cod(sigma) != F.on_object(X):
        raise WorkbenchError(f"{sigma} is not a morphism {X} -> F({X})", (sigma,))
    return CriterionReport(
        sigma_iso=find_inverse(C, sigma) is not None,
        tau_equiv=is_equivalence(base_change(C, sigma)).equivalence,
        s_equiv=is_equivalence(cobase_change(C, sigma)).equivalence,
        balanced=is_balanced(C).balanced,
    )
