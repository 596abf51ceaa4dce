import pytest

from workbench import catalog
from workbench.errors import NoPullback, NoPushout, WorkbenchError
from workbench.fincat import constant_functor, identity_functor, validate_category, validate_functor
from workbench.limits import (
    PullbackResult,
    PushoutResult,
    base_change,
    check_adjunction,
    cobase_change,
    coslice_category,
    fixpoint_criterion,
    is_balanced,
    is_epi,
    is_equivalence,
    is_mono,
    is_pullback,
    postcompose,
    precompose,
    pullback,
    pullback_factor,
    pushout,
    pushout_factor,
    slice_category,
)


@pytest.fixture
def vee():
    """x → z ← y with nothing below x and y."""
    return catalog.poset_category("xyz", [("x", "z"), ("y", "z")], "vee")


# ─── Pullbacks and pushouts ───────────────────────────────────────────────────

def test_meet_is_the_pullback(lattice_ab):
    pb = pullback(lattice_ab, "a<ab", "b<ab")
    assert pb == PullbackResult("0", "0<a", "0<b")
    assert is_pullback(lattice_ab, "a<ab", "b<ab", pb)


def test_join_is_the_pushout(lattice_ab):
    assert pushout(lattice_ab, "0<a", "0<b") == PushoutResult("ab", "a<ab", "b<ab")


def test_pullback_is_deterministic(lattice_ab):
    assert pullback(lattice_ab, "a<ab", "b<ab") == pullback(lattice_ab, "a<ab", "b<ab")


def test_non_universal_square_is_rejected(lattice_ab):
    assert is_pullback(lattice_ab, "id_ab", "id_ab", PullbackResult("ab", "id_ab", "id_ab"))
    assert not is_pullback(lattice_ab, "id_ab", "id_ab", PullbackResult("a", "a<ab", "a<ab"))


def test_no_pullback_without_lower_bound(vee):
    with pytest.raises(NoPullback):
        pullback(vee, "x<z", "y<z")


def test_no_pushout_in_the_opposite_situation():
    wedge = catalog.poset_category("xyz", [("z", "x"), ("z", "y")], "wedge")
    with pytest.raises(NoPushout):
        pushout(wedge, "z<x", "z<y")


def test_cospan_must_share_codomain(lattice_ab):
    with pytest.raises(WorkbenchError):
        pullback(lattice_ab, "0<a", "0<b")


def test_factorization_through_pullback(lattice_ab):
    pb = pullback(lattice_ab, "a<ab", "b<ab")
    assert pullback_factor(lattice_ab, pb, "0<a", "0<b") == "id_0"


def test_factorization_through_pushout(lattice_ab):
    po = pushout(lattice_ab, "0<a", "0<b")
    assert pushout_factor(lattice_ab, po, "a<ab", "b<ab") == "id_ab"


def test_pullbacks_in_a_groupoid():
    G = catalog.codiscrete_groupoid("AB")
    pb = pullback(G, "A>B", "B>B")
    assert is_pullback(G, "A>B", "B>B", pb)


# ─── Slices ───────────────────────────────────────────────────────────────────

def test_slice_over_top(lattice_ab):
    S = slice_category(lattice_ab, "ab")
    assert set(S.carrier.objects) == {"0<ab", "a<ab", "b<ab", "id_ab"}
    assert validate_category(S.carrier).ok
    assert validate_functor(S.projection).ok
    assert S.projection.on_object("a<ab") == "a"


def test_coslice_under_bottom(lattice_ab):
    S = coslice_category(lattice_ab, "0")
    assert set(S.carrier.objects) == {"0<a", "0<ab", "0<b", "id_0"}
    assert S.kind == "coslice"
    assert validate_category(S.carrier).ok


def test_slice_triangles_are_named_by_leg(lattice_ab):
    S = slice_category(lattice_ab, "ab")
    assert "[0<a|0<ab>a<ab]" in S.carrier.morphisms


def test_change_functors_are_functors(lattice_ab):
    for sigma in lattice_ab.morphisms:
        for make in (base_change, cobase_change, postcompose, precompose):
            assert validate_functor(make(lattice_ab, sigma)).ok


def test_base_change_pulls_back(lattice_ab):
    tau = base_change(lattice_ab, "a<ab")
    assert tau.on_object("b<ab") == "0<a"
    assert tau.on_object("id_ab") == "id_a"


# ─── Adjunctions, equivalences, balance ───────────────────────────────────────

@pytest.mark.parametrize("atoms", ["ab", "abc"])
def test_slice_adjunctions(atoms):
    C = catalog.subset_lattice(atoms)
    for sigma in C.morphisms:
        assert check_adjunction(postcompose(C, sigma), base_change(C, sigma)).found
        assert check_adjunction(cobase_change(C, sigma), precompose(C, sigma)).found


def test_adjunction_report_carries_unit_and_counit(lattice_ab):
    report = check_adjunction(postcompose(lattice_ab, "a<ab"), base_change(lattice_ab, "a<ab"))
    data = report.as_dict()
    assert data["found"]
    assert set(data["unit"]) == set(slice_category(lattice_ab, "a").carrier.objects)


def test_opposed_functors_required(arrow, lattice_ab):
    report = check_adjunction(identity_functor(arrow), identity_functor(lattice_ab))
    assert not report.found


def test_equivalences():
    G = catalog.codiscrete_groupoid("AB")
    assert is_equivalence(identity_functor(G)).equivalence
    arrow = catalog.walking_arrow()
    report = is_equivalence(constant_functor(arrow, arrow, "0"))
    assert not report.equivalence
    assert report.as_dict()["essentially_surjective"] is False


def test_walking_arrow_is_not_balanced(arrow):
    assert is_mono(arrow, "a") and is_epi(arrow, "a")
    report = is_balanced(arrow)
    assert not report
    assert report.witness == "a"


def test_groupoids_are_balanced():
    assert is_balanced(catalog.codiscrete_groupoid("ABC"))
    assert is_balanced(catalog.cyclic_group_category(4))


def test_parallel_pair_is_not_balanced():
    C = catalog.parallel_pair()
    assert is_mono(C, "f") and is_epi(C, "f")
    assert not is_balanced(C)


@pytest.mark.parametrize("index,period", [(1, 1), (2, 1), (1, 2)])
def test_cyclic_monoids_are_balanced_but_not_groupoids(index, period):
    M = catalog.cyclic_monoid(index, period)
    assert is_balanced(M)
    assert not is_mono(M, "x1") and not is_epi(M, "x1")


# ─── Fixed-point criterion ────────────────────────────────────────────────────

def test_criterion_on_groupoid():
    G = catalog.codiscrete_groupoid("AB")
    F = catalog.swap_functor(G, {"A": "B"})
    report = fixpoint_criterion(G, F, "A", "A>B")
    assert report.sigma_iso and report.tau_equiv and report.s_equiv and report.balanced
    assert report.consistent


def test_criterion_on_non_iso(lattice_ab):
    F = catalog.thin_functor(lattice_ab, lattice_ab, {x: "ab" for x in lattice_ab.objects})
    report = fixpoint_criterion(lattice_ab, F, "a", "a<ab")
    assert not report.sigma_iso
    assert report.consistent


def test_criterion_checks_sigma_typing(lattice_ab):
    F = identity_functor(lattice_ab)
    with pytest.raises(WorkbenchError):
        fixpoint_criterion(lattice_ab, F, "a", "a<ab")


def test_criterion_on_idempotent_monoid():
    M = catalog.cyclic_monoid(1, 1)
    Id = identity_functor(M)
    report = fixpoint_criterion(M, Id, "*", "x0")
    assert report.sigma_iso and report.balanced and report.consistent
    # x1 is idempotent and x1∘p = x1∘q for every pair, so no cone is universal
    with pytest.raises(NoPullback):
        fixpoint_criterion(M, Id, "*", "x1")
