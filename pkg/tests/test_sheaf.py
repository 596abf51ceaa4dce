import pytest

from workbench import catalog
from workbench.abgrp import AbHom, IntMatrix, cyclic, identity_hom, trivial, zero_hom
from workbench.errors import DegreeOutOfRange, NotEndofunctor, NotExactInput, NotSiteMorphism
from workbench.fincat import identity_functor
from workbench.sheaf import (
    Presheaf,
    PresheafMorphism,
    cech_cohomology,
    cech_cohomology_all,
    cech_complex,
    cech_fixed_point_report,
    check_exactness_preserved,
    comparison_iso,
    constant_presheaf,
    image_family,
    is_flabby,
    is_sheaf,
    pullback_presheaf,
    validate_presheaf,
    validate_presheaf_morphism,
)


def scalar(G, H, k):
    return AbHom(G, H, IntMatrix.from_rows([[k]], 1))


def constant_map(mu, nu, k, name=""):
    return PresheafMorphism(mu, nu, {x: scalar(mu(x), nu(x), k) for x in mu.base.objects}, name)


@pytest.fixture
def comp(pseudocircle):
    return catalog.components_presheaf(pseudocircle.small, pseudocircle.space)


@pytest.fixture
def z2(contractible):
    return constant_presheaf(contractible.small, cyclic(2), "z2")


@pytest.fixture
def z4(contractible):
    return constant_presheaf(contractible.small, cyclic(4), "z4")


# ─── Presheaves ───────────────────────────────────────────────────────────────

def test_catalog_presheaves_validate(comp, z2):
    assert validate_presheaf(comp)
    assert validate_presheaf(z2)
    assert [comp(x).invariants.as_list() for x in ("X", "U", "ab", "a", "0")] == [[2], [2], [2, 2], [2], []]


def test_doubling_restrictions_are_not_functorial(contractible):
    Z4 = cyclic(4)
    double = scalar(Z4, Z4, 2)
    mu = Presheaf(contractible.small, {x: Z4 for x in contractible.category.objects},
                  {m: double for m in contractible.category.morphisms}, "double")
    report = validate_presheaf(mu)
    assert report.kind == "FunctorialityFails"


def test_missing_restriction(z2):
    restrictions = dict(z2.restrictions)
    del restrictions["W<U"]
    report = validate_presheaf(Presheaf(z2.site, z2.values, restrictions))
    assert report.kind == "RestrictionIllTyped"
    assert report.witness == ("W<U",)


def test_pullback_along_symmetry(comp, pseudocircle):
    pulled = pullback_presheaf(comp, pseudocircle.symmetry)
    assert validate_presheaf(pulled)
    assert pulled("U") == comp("V")
    with pytest.raises(NotEndofunctor):
        pullback_presheaf(comp, identity_functor(catalog.walking_arrow()))


def test_presheaf_morphisms(z2, z4):
    assert validate_presheaf_morphism(constant_map(z2, z4, 2))
    assert validate_presheaf_morphism(constant_map(z4, z2, 1))
    assert validate_presheaf_morphism(constant_map(z2, z4, 1)).kind == "ComponentIllTyped"


def test_non_natural_morphism(contractible):
    C = contractible.category
    Z2 = cyclic(2)
    mu = constant_presheaf(contractible.small, Z2)
    components = {x: identity_hom(Z2) for x in C.objects}
    components["X"] = zero_hom(Z2, Z2)
    report = validate_presheaf_morphism(PresheafMorphism(mu, mu, components))
    assert report.kind == "NaturalityFails"


# ─── Sheaf condition ──────────────────────────────────────────────────────────

def test_constant_and_component_presheaves_are_sheaves(z2, comp):
    assert is_sheaf(z2)
    assert is_sheaf(comp)


def test_sheaves_stay_sheaves_under_pullback(z2, comp, contractible, pseudocircle):
    assert is_sheaf(pullback_presheaf(comp, pseudocircle.symmetry))
    assert is_sheaf(pullback_presheaf(z2, contractible.symmetry))


def test_vanishing_global_sections_is_not_a_sheaf(contractible):
    C = contractible.category
    Z2, zero = cyclic(2), trivial()
    values = {x: Z2 for x in C.objects}
    values["X"] = zero
    restrictions = {m: zero_hom(zero, values[C.dom(m)]) if C.cod(m) == "X" else identity_hom(Z2)
                    for m in C.morphisms}
    mu = Presheaf(contractible.small, values, restrictions, "holes")
    assert validate_presheaf(mu)
    report = is_sheaf(mu)
    assert not report
    assert report.witness == ("X", "UV")


# ─── Čech cohomology ──────────────────────────────────────────────────────────

def test_contractible_cover_has_no_higher_cohomology(contractible):
    mu = constant_presheaf(contractible.small, cyclic(2))
    cover = contractible.small.family("X", "UV")
    assert [h.as_list() for h in cech_cohomology_all(cover, mu, 2)] == [[2], [], []]


def test_pseudocircle_has_a_loop(comp, pseudocircle):
    cover = pseudocircle.small.family("X", "UV")
    assert cech_cohomology(cover, comp, 0).as_list() == [2]
    assert cech_cohomology(cover, comp, 1).as_list() == [2]


def test_first_cohomology_by_counting(comp, pseudocircle):
    cover = pseudocircle.small.family("X", "UV")
    cx = cech_complex(cover, comp, 1)
    assert len(cx.tuples[1]) == 4
    C1, C2 = cx.groups[1], cx.groups[2]
    cocycles = [x for x in C1.elements() if C2.is_zero_element(cx.differentials[1](x))]
    boundaries = {C1.canonical(cx.differentials[0](y)) for y in cx.groups[0].elements()}
    assert len(cocycles) // len(boundaries) == 2
    assert cx.cohomology(1).order == 2


def test_cohomology_by_counting_on_contractible_cover(z2, contractible):
    cover = contractible.small.family("X", "UV")
    cx = cech_complex(cover, z2, 2)
    for n in range(3):
        here, above = cx.groups[n], cx.groups[n + 1]
        cocycles = sum(1 for x in here.elements() if above.is_zero_element(cx.differentials[n](x)))
        if n:
            boundaries = {here.canonical(cx.differentials[n - 1](y)) for y in cx.groups[n - 1].elements()}
        else:
            boundaries = {here.canonical((0,) * here.generators)}
        assert cocycles % len(boundaries) == 0
        assert cocycles // len(boundaries) == cx.cohomology(n).order
    assert cx.cohomology(0).order == 2
    assert cx.cohomology(1).order == cx.cohomology(2).order == 1


def test_identity_cover_is_acyclic(comp, pseudocircle):
    cover = pseudocircle.small.family("U", "Uab")
    assert [h.as_list() for h in cech_cohomology_all(cover, comp, 2)] == [[2], [], []]


def test_degree_bounds(comp, pseudocircle):
    cover = pseudocircle.small.family("X", "UV")
    with pytest.raises(DegreeOutOfRange):
        cech_complex(cover, comp, -1)
    with pytest.raises(DegreeOutOfRange):
        cech_complex(cover, comp, 1).cohomology(2)


def test_image_family(pseudocircle):
    cover = pseudocircle.small.family("X", "UV")
    image = image_family(pseudocircle.symmetry, cover)
    assert image.legs == ("V<X", "U<X")
    assert image.target == "X"


# ─── Flabbiness ───────────────────────────────────────────────────────────────

def test_constant_presheaf_on_contractible_site_is_flabby(z2):
    report = is_flabby(z2, 2)
    assert report
    assert report.as_dict()["verdict"] == "degree-truncated"


def test_flabby_presheaf_stays_flabby_under_pullback(z2, z4, contractible):
    for mu in (z2, z4):
        pulled = pullback_presheaf(mu, contractible.symmetry)
        assert is_flabby(pulled, 2)


def test_component_presheaf_on_pseudocircle_is_not_flabby(comp):
    report = is_flabby(comp, 1)
    assert not report
    assert report.witness == ("X", "UV", 1, [2])


# ─── Comparison along a site morphism ─────────────────────────────────────────

def test_comparison_along_symmetry(comp, pseudocircle):
    cover = pseudocircle.small.family("X", "UV")
    report = comparison_iso(cover, comp, pseudocircle.symmetry, N=1)
    assert report.ok
    assert [a.as_list() for a, _ in report.cohomology] == [[2], [2]]


def test_comparison_needs_a_site_morphism(z2, contractible):
    C = contractible.category
    collapse = catalog.thin_functor(C, C, {"X": "X", "U": "U", "V": "U", "W": "U"}, "collapse")
    with pytest.raises(NotSiteMorphism):
        comparison_iso(contractible.small.family("X", "UV"), z2, collapse, N=1)


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_comparison_in_every_degree(comp, pseudocircle, N):
    cover = pseudocircle.small.family("X", "UV")
    report = comparison_iso(cover, comp, pseudocircle.symmetry, N=N)
    assert report.ok
    assert len(report.maps) == N + 2
    expected = [[2], [2], [], []][:N + 1]
    assert [a.as_list() for a, _ in report.cohomology] == expected
    assert [b.as_list() for _, b in report.cohomology] == expected


def test_global_object_is_a_cech_fixed_point(comp, pseudocircle):
    report = cech_fixed_point_report("X", pseudocircle.symmetry, [comp], N=1)
    assert report.declared
    assert report.bridge_consistent
    assert {row["cover"] for row in report.rows} == {"X", "UV", "UVab"}


def test_overlap_is_a_cech_fixed_point(comp, pseudocircle):
    report = cech_fixed_point_report("ab", pseudocircle.symmetry, [comp], N=1)
    assert report.declared and report.bridge_consistent
    assert [(row["cover"], row["degree"], row["H"], row["H_image"]) for row in report.rows] == [
        ("ab", 0, [2, 2], [2, 2]), ("ab", 1, [], [])]


def test_swapped_opens_have_matching_cohomology(comp, pseudocircle):
    assert pseudocircle.symmetry.on_object("U") == "V"
    report = cech_fixed_point_report("U", pseudocircle.symmetry, [comp], N=1)
    assert report.declared
    assert report.bridge_consistent
    assert len(report.rows) == 4
    assert {row["cover"] for row in report.rows} == {"U", "Uab"}
    assert all(row["H"] == row["H_image"] == row["H_pulled"] for row in report.rows)
    point = cech_fixed_point_report("a", pseudocircle.symmetry, [comp], N=1)
    assert point.declared
    assert [row["H_image"] for row in point.rows] == [[2], []]


# ─── Exactness ────────────────────────────────────────────────────────────────

def test_short_exact_sequence_survives_pullback(z2, z4, contractible):
    seq = (constant_map(z2, z4, 2, "double"), constant_map(z4, z2, 1, "reduce"))
    report = check_exactness_preserved(contractible.symmetry, seq)
    assert report.preserved
    assert report.as_dict() == {"preserved": True}


def test_reversed_sequence_is_rejected(z2, z4, contractible):
    seq = (constant_map(z4, z2, 1, "reduce"), constant_map(z2, z4, 2, "double"))
    with pytest.raises(NotExactInput):
        check_exactness_preserved(contractible.symmetry, seq)


def test_ill_typed_sequence_is_rejected(z2, z4, contractible):
    seq = (constant_map(z2, z4, 1, "bad"), constant_map(z4, z2, 1, "reduce"))
    with pytest.raises(NotExactInput):
        check_exactness_preserved(contractible.symmetry, seq)
