import random

import pytest
from hypothesis import given, settings, strategies as st

from workbench import catalog, generators
from workbench.errors import ParseError, UnknownMorphism, WorkbenchError
from workbench.fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    compose_functors,
    constant_functor,
    enumerate_functors,
    find_inverse,
    functors_isomorphic,
    identity_functor,
    is_faithful,
    is_full,
    is_nat_iso,
    opposite,
    validate_category,
    validate_functor,
    validate_nat_transformation,
)
from workbench.proptest import category_laws_hold

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def one_object(table, mids=("e", "x")):
    return FinCategory(["*"], [(m, "*", "*") for m in mids], {"*": "e"}, table, "M")


# ─── Categories ───────────────────────────────────────────────────────────────

def test_walking_arrow_is_a_category(arrow):
    assert validate_category(arrow).ok
    assert arrow.hom("0", "1") == ("a",)
    assert arrow.hom("1", "0") == ()
    assert arrow.compose("a", "id0") == "a"
    assert arrow.compose_path("id1", "a", "id0") == "a"


def test_listings_are_sorted():
    C = FinCategory(["b", "a"], [("u", "b", "b"), ("t", "a", "a")], {"a": "t", "b": "u"},
                    {("t", "t"): "t", ("u", "u"): "u"})
    assert C.objects == ("a", "b")
    assert C.morphisms == ("t", "u")


def test_constructor_rejects_unknown_object():
    with pytest.raises(ParseError):
        FinCategory(["0"], [("f", "0", "1")], {}, {})


def test_constructor_rejects_uncomposable_entry(arrow):
    with pytest.raises(ParseError):
        FinCategory(arrow.objects, arrow.morphism_triples(), arrow.identities_table(),
                    {**arrow.composition_table(), ("a", "a"): "a"})


def test_compose_unknown_and_missing():
    C = one_object({("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x"})
    with pytest.raises(UnknownMorphism):
        C.compose("nope", "e")
    with pytest.raises(WorkbenchError):
        C.compose("x", "x")


def test_missing_identity():
    C = FinCategory(["0", "1"], [("id0", "0", "0"), ("id1", "1", "1")], {"0": "id0"},
                    {("id0", "id0"): "id0", ("id1", "id1"): "id1"})
    assert validate_category(C).kind == "MissingIdentity"


def test_composition_gap():
    C = one_object({("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x"})
    report = validate_category(C)
    assert report.kind == "CompositionGap"
    assert report.witness == ("x", "x")


def test_unit_law_violation():
    C = one_object({("e", "e"): "e", ("e", "x"): "e", ("x", "e"): "x", ("x", "x"): "x"})
    assert validate_category(C).kind == "UnitLawViolation"


def test_associativity_violation():
    table = {("e", "e"): "e", ("e", "x"): "x", ("e", "y"): "y", ("x", "e"): "x", ("y", "e"): "y",
             ("x", "x"): "y", ("x", "y"): "x", ("y", "x"): "y", ("y", "y"): "x"}
    report = validate_category(one_object(table, ("e", "x", "y")))
    assert not report.ok
    assert report.kind == "AssociativityViolation"


def test_opposite_is_valid_and_involutive(lattice_ab):
    op = opposite(lattice_ab)
    assert validate_category(op).ok
    assert op.dom("0<a") == "a"
    assert opposite(op) == lattice_ab


def test_find_inverse_in_a_group():
    Z3 = catalog.cyclic_group_category(3)
    assert find_inverse(Z3, "g1") == "g2"
    assert find_inverse(catalog.walking_arrow(), "a") is None


def test_group_powers():
    Z3 = catalog.cyclic_group_category(3)
    square = catalog.group_power(Z3, 2)
    assert validate_functor(square)
    assert square.on_morphism("g1") == "g2"
    twice = compose_functors(square, square)
    assert all(twice.on_morphism(g) == g for g in Z3.morphisms)
    assert validate_functor(catalog.group_power(catalog.cyclic_group_category(4), 2))


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_validator_agrees_with_raw_table_check(seed):
    rng = random.Random(seed)
    C = generators.random_category(rng)
    assert validate_category(C).ok
    assert category_laws_hold(C)


# ─── Functors ─────────────────────────────────────────────────────────────────

def test_identity_and_constant_functors(arrow):
    assert validate_functor(identity_functor(arrow)).ok
    K = constant_functor(arrow, arrow, "0")
    assert validate_functor(K).ok
    assert K.on_morphism("a") == "id0"
    assert is_faithful(K) and not is_full(K)


def test_functor_with_bad_typing(arrow):
    F = Functor(arrow, arrow, {"0": "1", "1": "0"}, {"id0": "id1", "id1": "id0", "a": "a"}, "flip")
    assert validate_functor(F).kind == "DomCodMismatch"


def test_functor_not_preserving_identities():
    C = catalog.cyclic_group_category(2)
    F = Functor(C, C, {"*": "*"}, {"g0": "g1", "g1": "g1"}, "bad")
    assert validate_functor(F).kind == "IdentityNotPreserved"


def test_composition_of_functors(arrow):
    K = constant_functor(arrow, arrow, "1")
    Id = identity_functor(arrow)
    assert compose_functors(K, Id) == K
    assert compose_functors(Id, K).obj_map == K.obj_map


def test_endofunctors_of_three_chain():
    C = catalog.chain_poset(3)
    functors = list(enumerate_functors(C, C))
    assert len(functors) == 10
    assert all(validate_functor(F).ok for F in functors)
    assert len({F for F in functors}) == 10


def test_enumeration_limit():
    C = catalog.chain_poset(3)
    assert len(list(enumerate_functors(C, C, limit=4))) == 4


def test_group_endomorphisms():
    Z3 = catalog.cyclic_group_category(3)
    assert len(list(enumerate_functors(Z3, Z3))) == 3


# ─── Natural transformations ──────────────────────────────────────────────────

def test_swap_is_isomorphic_to_identity():
    C = catalog.codiscrete_groupoid("AB")
    swap = catalog.swap_functor(C, {"A": "B"})
    eta = functors_isomorphic(swap, identity_functor(C))
    assert eta is not None
    assert validate_nat_transformation(eta).ok
    assert is_nat_iso(eta)


def test_constant_to_identity_is_natural_but_not_iso(arrow):
    eta = NatTransformation(constant_functor(arrow, arrow, "0"), identity_functor(arrow),
                            {"0": "id0", "1": "a"}, "eta")
    assert validate_nat_transformation(eta).ok
    assert not is_nat_iso(eta)
    assert functors_isomorphic(constant_functor(arrow, arrow, "0"), identity_functor(arrow)) is None


def test_component_type_mismatch(arrow):
    eta = NatTransformation(identity_functor(arrow), identity_functor(arrow), {"0": "a", "1": "id1"})
    assert validate_nat_transformation(eta).kind == "ComponentTypeMismatch"


def test_naturality_failure():
    C = catalog.parallel_pair()
    F = Functor(C, C, {"A": "A", "B": "B"}, {"idA": "idA", "idB": "idB", "f": "g", "g": "f"}, "swap")
    Id = identity_functor(C)
    eta = NatTransformation(F, Id, {"A": "idA", "B": "idB"}, "eta")
    assert validate_nat_transformation(eta).kind == "NaturalitySquareFails"
