import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from workbench import generators
from workbench.abgrp import (
    AbGroupInvariants,
    AbHom,
    IntMatrix,
    PresentedAbGroup,
    cokernel,
    cyclic,
    direct_sum,
    equalizer,
    free,
    from_invariants,
    hom_is_well_defined,
    homology_at,
    identity_hom,
    image,
    invariant_factors,
    is_injective,
    is_short_exact,
    is_surjective,
    iso_test,
    kernel,
    smith_normal_form,
    solve_integer,
    zero_hom,
)
from workbench.errors import IllTypedHom, NotAComplex, NotParallel
from workbench.proptest import determinant_divisors

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def hom(G, H, rows):
    return AbHom(G, H, IntMatrix.from_rows(rows, G.generators))


# ─── Matrices and Smith normal form ───────────────────────────────────────────

def test_matrix_product_and_trace():
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert (A @ IntMatrix.identity(2)) == A
    assert A.trace() == 5
    assert A.determinant() == -2
    assert A.apply((1, 1)) == (3, 7)


def test_ill_shaped_matrix():
    from workbench.errors import WorkbenchError
    with pytest.raises(WorkbenchError):
        IntMatrix(2, 2, ((1, 2),))


def test_smith_form_of_small_matrix():
    M = IntMatrix.from_rows([[2, 4], [6, 8]])
    snf = smith_normal_form(M)
    assert snf.diagonal == (2, 4)
    assert snf.U @ M @ snf.V == snf.D
    assert invariant_factors(M) == (2, 4)


def test_smith_form_against_sympy():
    M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    ours = [d for d in smith_normal_form(M).diagonal if d]
    theirs = sympy_snf(sympy.Matrix(M.to_lists()), domain=sympy.ZZ)
    assert sorted(ours) == sorted(abs(theirs[i, i]) for i in range(3) if theirs[i, i])


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_smith_form_laws(seed):
    M = generators.random_int_matrix(random.Random(seed), max_size=4)
    snf = smith_normal_form(M)
    d = list(snf.diagonal)
    assert snf.U @ M @ snf.V == snf.D
    assert abs(snf.U.determinant()) == 1 and abs(snf.V.determinant()) == 1
    assert all(b % a == 0 if a else b == 0 for a, b in zip(d, d[1:]))
    running, products = 1, []
    for v in d:
        running *= v
        products.append(running)
    assert products == determinant_divisors(M)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_determinant_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    M = generators.random_int_matrix(rng, rows=n, cols=n)
    assert M.determinant() == sympy.Matrix(M.to_lists()).det()


# ─── Groups ───────────────────────────────────────────────────────────────────

def test_invariants_of_presentations():
    assert from_invariants([2, 0]).invariants == AbGroupInvariants(1, (2,))
    assert from_invariants([2, 3]).invariants == AbGroupInvariants(0, (6,))
    assert from_invariants([1]).is_zero
    assert str(from_invariants([0, 0, 4])) == "PresentedAbGroup(Z/4 + Z^2)"


def test_relations_matrix_presentation():
    G = PresentedAbGroup(2, IntMatrix.from_rows([[2, 0], [0, 4]]))
    assert G.invariants.as_list() == [2, 4]
    assert G.order == 8


def test_canonical_coordinates():
    Z4 = cyclic(4)
    assert Z4.canonical((5,)) == Z4.canonical((1,))
    assert Z4.is_zero_element((8,))
    assert not Z4.is_zero_element((2,))


def test_free_group_is_infinite():
    assert free(2).order is None
    assert cyclic(0).invariants == AbGroupInvariants(1)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_element_enumeration_matches_order(seed):
    G = generators.random_finite_group(random.Random(seed), max_order=32)
    elements = list(G.elements())
    assert len(elements) == G.order
    assert len({G.canonical(x) for x in elements}) == G.order


def test_direct_sum_injections_and_projections():
    ds = direct_sum([cyclic(2), cyclic(3)])
    assert ds.group.invariants == AbGroupInvariants(0, (6,))
    for inj, proj in zip(ds.injections, ds.projections):
        assert (proj @ inj).matrix == IntMatrix.identity(inj.source.generators)


def test_simplified_isomorphisms():
    G = PresentedAbGroup(2, IntMatrix.from_rows([[2, 0], [0, 3]]))
    S, to_s, from_s = G.simplified()
    assert S.invariants == G.invariants
    assert hom_is_well_defined(to_s) and hom_is_well_defined(from_s)


# ─── Homomorphisms ────────────────────────────────────────────────────────────

def test_doubling_on_z4():
    Z4 = cyclic(4)
    double = hom(Z4, Z4, [[2]])
    assert kernel(double)[0].invariants.as_list() == [2]
    assert image(double)[0].invariants.as_list() == [2]
    assert cokernel(double)[0].invariants.as_list() == [2]
    assert not is_injective(double) and not is_surjective(double)


def test_equalizer_is_kernel_of_difference():
    G = cyclic(6)
    eq, inclusion = equalizer(identity_hom(G), hom(G, G, [[3]]))
    assert eq.invariants.as_list() == [2]
    assert is_injective(inclusion)
    with pytest.raises(NotParallel):
        equalizer(identity_hom(cyclic(2)), identity_hom(cyclic(3)))


def test_ill_typed_homs():
    with pytest.raises(IllTypedHom):
        AbHom(cyclic(2), cyclic(2), IntMatrix.zeros(2, 1))
    with pytest.raises(NotParallel):
        identity_hom(cyclic(2)) + identity_hom(cyclic(3))
    with pytest.raises(IllTypedHom):
        kernel(hom(cyclic(2), cyclic(3), [[1]]))


def test_well_defined_check():
    assert hom_is_well_defined(hom(cyclic(2), cyclic(4), [[2]]))
    assert not hom_is_well_defined(hom(cyclic(2), cyclic(4), [[1]]))


def test_short_exact_sequences():
    Z2, Z4 = cyclic(2), cyclic(4)
    i, p = hom(Z2, Z4, [[2]]), hom(Z4, Z2, [[1]])
    assert is_short_exact(i, p)
    assert not is_short_exact(zero_hom(Z2, Z4), p)
    with pytest.raises(IllTypedHom):
        is_short_exact(i, i)


def test_iso_test_witness():
    G, H = from_invariants([2, 3]), from_invariants([6])
    ok, witness = iso_test(G, H)
    assert ok
    assert hom_is_well_defined(witness)
    assert is_injective(witness) and is_surjective(witness)
    assert iso_test(from_invariants([4]), from_invariants([2, 2])) == (False, None)


# ─── Complexes ────────────────────────────────────────────────────────────────

def test_homology_of_multiplication_by_two():
    Z = free(1)
    maps = [hom(Z, Z, [[2]])]
    assert homology_at(maps, 0).is_zero
    assert homology_at(maps, 1).as_list() == [2]


def test_non_complex_is_rejected():
    Z = free(1)
    with pytest.raises(NotAComplex):
        homology_at([identity_hom(Z), identity_hom(Z)], 1)


def test_hexagon_incidence_complex():
    chains = free(6)
    edges = [[0] * 6 for _ in range(6)]
    for j in range(6):
        edges[j][j] -= 1
        edges[(j + 1) % 6][j] += 1
    maps = [hom(chains, chains, edges)]
    assert homology_at(maps, 0) == AbGroupInvariants(1)
    assert homology_at(maps, 1) == AbGroupInvariants(1)


# ─── Element enumeration ──────────────────────────────────────────────────────

def enumerated_homology(maps, moduli, n):
    """|ker(maps[n])| / |im(maps[n-1])| counted element by element."""
    G = maps[n].source if n < len(maps) else maps[-1].target
    vectors = generators.all_vectors(moduli[n])
    if n < len(maps):
        cycles = {G.canonical(x) for x in vectors if maps[n].target.is_zero_element(maps[n](x))}
    else:
        cycles = {G.canonical(x) for x in vectors}
    if n:
        boundaries = {G.canonical(maps[n - 1](y)) for y in generators.all_vectors(moduli[n - 1])}
    else:
        boundaries = {G.canonical((0,) * G.generators)}
    assert boundaries <= cycles
    assert len(cycles) % len(boundaries) == 0
    return len(cycles) // len(boundaries)


Z2, Z4, Z6 = cyclic(2), cyclic(4), cyclic(6)
Z2xZ2 = direct_sum([Z2, Z2]).group

finite_complexes = [
    pytest.param([hom(Z4, Z4, [[2]]), hom(Z4, Z4, [[2]])], [(4,), (4,), (4,)], [2, 1, 2], id="doubling-on-z4"),
    pytest.param([hom(Z6, Z6, [[3]]), hom(Z6, Z6, [[2]])], [(6,), (6,), (6,)], [3, 1, 2], id="z6"),
    pytest.param([hom(Z2, Z4, [[2]]), hom(Z4, Z2, [[1]])], [(2,), (4,), (2,)], [1, 1, 1], id="z2-z4-z2"),
    pytest.param([hom(Z2, Z2xZ2, [[1], [1]]), hom(Z2xZ2, Z2, [[1, 1]])], [(2,), (2, 2), (2,)], [1, 1, 1],
                 id="diagonal-then-sum"),
    pytest.param([hom(Z2xZ2, Z2, [[1, 0]]), zero_hom(Z2, Z4)], [(2, 2), (2,), (4,)], [2, 1, 4],
                 id="projection-then-zero"),
]


@pytest.mark.parametrize("maps, moduli, orders", finite_complexes)
def test_homology_matches_element_enumeration(maps, moduli, orders):
    for n, expected in enumerate(orders):
        assert enumerated_homology(maps, moduli, n) == expected
        assert homology_at(maps, n).order == expected


@pytest.mark.parametrize("maps, moduli, orders", finite_complexes)
def test_exactness_by_counting(maps, moduli, orders):
    # exact at n iff kernel and image have the same number of elements
    for n in range(1, len(maps)):
        exact = enumerated_homology(maps, moduli, n) == 1
        assert exact == homology_at(maps, n).is_zero
    if len(maps) == 2 and all(h == 1 for h in orders):
        assert is_short_exact(*maps)


def diagonal_of_z2xz2():
    return {Z2xZ2.canonical(v) for v in generators.all_vectors((2, 2)) if v[0] == v[1]}


def included_elements(K, inclusion):
    return {inclusion.target.canonical(inclusion(k)) for k in K.elements()}


def test_kernel_of_sum_is_diagonal():
    total = hom(Z2xZ2, Z2, [[1, 1]])
    K, inclusion = kernel(total)
    assert K.invariants.as_list() == [2]
    assert included_elements(K, inclusion) == diagonal_of_z2xz2()
    assert {Z2xZ2.canonical(v) for v in generators.all_vectors((2, 2))
            if Z2.is_zero_element(total(v))} == diagonal_of_z2xz2()
    assert cokernel(total)[0].is_zero


def test_equalizer_of_projections_is_diagonal():
    ds = direct_sum([Z2, Z2])
    first, second = ds.projections
    E, inclusion = equalizer(first, second)
    assert E.invariants.as_list() == [2]
    assert included_elements(E, inclusion) == diagonal_of_z2xz2()


def test_enumeration_limit():
    from workbench.errors import WorkbenchError
    assert len(generators.all_vectors((2, 3))) == 6
    with pytest.raises(WorkbenchError):
        generators.all_vectors((100, 101))


# ─── Integer linear systems ───────────────────────────────────────────────────

def test_solve_integer():
    A = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_integer(A, (4, 9)) == (2, 3)
    assert solve_integer(A, (1, 0)) is None
    singular = IntMatrix.from_rows([[1, 1], [2, 2]])
    x = solve_integer(singular, (3, 6))
    assert x is not None and singular.apply(x) == (3, 6)
    assert solve_integer(singular, (3, 5)) is None


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_solve_integer_recovers_a_right_hand_side(seed):
    rng = random.Random(seed)
    A = generators.random_int_matrix(rng, max_size=4)
    x = tuple(rng.randint(-3, 3) for _ in range(A.cols))
    b = A.apply(x)
    solution = solve_integer(A, b)
    assert solution is not None
    assert A.apply(solution) == b


def test_solve_integer_length_mismatch():
    from workbench.errors import WorkbenchError
    with pytest.raises(WorkbenchError):
        solve_integer(IntMatrix.identity(2), (1, 2, 3))
