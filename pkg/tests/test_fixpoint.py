import random

import pytest
from hypothesis import given, settings, strategies as st

from workbench import catalog, generators
from workbench.errors import NotEndofunctor, NotNaturalIso
from workbench.fincat import (
    NatTransformation,
    constant_functor,
    identity_functor,
    is_faithful,
    is_full,
    validate_category,
    validate_functor,
)
from workbench.fixpoint import (
    FixedPoint,
    fix_category,
    fixed_points,
    hom_colimit,
    is_fixed_point,
    iso_class,
    strict_fixed_points,
    transport,
)
from workbench.proptest import colimit_size_oracle

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_every_witness_counts():
    Z3 = catalog.cyclic_group_category(3)
    points = fixed_points(identity_functor(Z3))
    assert points == [FixedPoint("*", "g0"), FixedPoint("*", "g1"), FixedPoint("*", "g2")]
    assert [p.key for p in points] == ["(*|g0)", "(*|g1)", "(*|g2)"]


def test_swap_has_two_fixed_points_and_no_strict_one():
    G = catalog.codiscrete_groupoid("AB")
    F = catalog.swap_functor(G, {"A": "B"})
    assert fixed_points(F) == [FixedPoint("A", "A>B"), FixedPoint("B", "B>A")]
    assert strict_fixed_points(F) == []
    assert is_fixed_point(F, "A", "A>B")


def test_non_iso_is_not_a_witness(arrow):
    K = constant_functor(arrow, arrow, "1")
    assert not is_fixed_point(K, "0", "a")
    assert fixed_points(K) == [FixedPoint("1", "id1")]
    assert strict_fixed_points(K) == ["1"]


def test_fixed_points_need_an_endofunctor(arrow):
    with pytest.raises(NotEndofunctor):
        fixed_points(constant_functor(arrow, catalog.terminal_category(), "*"))


def test_iso_class():
    G = catalog.codiscrete_groupoid("ABC")
    assert iso_class(G, "A") == ["A", "B", "C"]
    assert iso_class(catalog.walking_arrow(), "0") == ["0"]


# ─── S(F) ─────────────────────────────────────────────────────────────────────

def test_fix_category_of_group_identity():
    Z3 = catalog.cyclic_group_category(3)
    SF = fix_category(identity_functor(Z3))
    assert len(SF.carrier.objects) == 3
    # a commutative group: every arrow commutes with every witness, none links distinct ones
    assert len(SF.carrier.morphisms) == 9
    assert all(SF.carrier.hom(a, b) == () for a in SF.carrier.objects
               for b in SF.carrier.objects if a != b)


def test_fix_category_is_a_category_with_faithful_forgetful():
    G = catalog.codiscrete_groupoid("AB")
    SF = fix_category(catalog.swap_functor(G, {"A": "B"}))
    assert validate_category(SF.carrier).ok
    assert validate_functor(SF.forgetful).ok
    assert is_faithful(SF.forgetful)
    assert SF.underlying("[A>B|(A|A>B)>(B|B>A)]") == "A>B"


# ─── Transport ────────────────────────────────────────────────────────────────

def test_transport_along_swap_iso():
    G = catalog.codiscrete_groupoid("AB")
    F = catalog.swap_functor(G, {"A": "B"})
    eta = NatTransformation(F, identity_functor(G), {"A": "B>A", "B": "A>B"}, "eta")
    res = transport(eta)
    assert res.round_trip_identity
    assert res.forward.on_object("(A|A>B)") == "(A|A>A)"


def test_transport_needs_natural_iso(arrow):
    eta = NatTransformation(constant_functor(arrow, arrow, "0"), identity_functor(arrow),
                            {"0": "id0", "1": "a"}, "eta")
    with pytest.raises(NotNaturalIso):
        transport(eta)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_transport_round_trip(seed):
    rng = random.Random(seed)
    C = rng.choice([catalog.codiscrete_groupoid("ABC"), catalog.cyclic_group_category(4),
                    generators.random_preorder(rng, 4, density=0.5)])
    _, _, eta = generators.random_iso_pair(rng, C)
    res = transport(eta)
    assert res.round_trip_identity
    assert len(res.forward.source.objects) == len(res.forward.target.objects)


# ─── Hom-set colimit ──────────────────────────────────────────────────────────

def test_constant_functor_counterexample(arrow):
    assert hom_colimit(arrow, constant_functor(arrow, arrow, "0"), "1").size == 0


def test_identity_colimit_is_a_point(arrow):
    report = hom_colimit(arrow, identity_functor(arrow), "0")
    assert report.size == 1
    assert report.as_dict()["classes"] == [[["0", "id0"], ["1", "a"]]]


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_full_functors_have_point_colimits(seed):
    rng = random.Random(seed)
    C = generators.random_category(rng, max_objects=4, max_morphisms=16)
    F = generators.random_endofunctor(rng, C)
    for X in sorted({p.object for p in fixed_points(F)}):
        size = hom_colimit(C, F, X).size
        assert size == colimit_size_oracle(C, F, X)
        if is_full(F):
            assert size == 1
