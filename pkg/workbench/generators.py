"""
generators.py — seeded random finite structures for the property suites.

Every generator takes a ``random.Random`` so a run is reproduced by its seed.
"""

import random
from itertools import product
from typing import Optional

from .abgrp import IntMatrix, PresentedAbGroup
from .catalog import cyclic_monoid, preorder_category
from .errors import WorkbenchError
from .fincat import FinCategory, Functor, NatTransformation, enumerate_functors, find_inverse, isomorphisms


# ── Categories ────────────────────────────────────────────────────────────────

def random_preorder(rng: random.Random, max_objects: int = 5, acyclic: bool = False,
                    density: float = 0.3) -> FinCategory:
    n = rng.randint(1, max_objects)
    elements = [chr(ord("p") + i) for i in range(n)]
    relation = [(x, y) for i, x in enumerate(elements) for j, y in enumerate(elements)
                if i != j and (not acyclic or i < j) and rng.random() < density]
    return preorder_category(elements, relation, f"pre{n}")


def disjoint_union(C: FinCategory, D: FinCategory, name: str = "") -> FinCategory:
    """C ⊔ D with ids prefixed ``l.`` and ``r.``."""
    def tag(prefix, cat):
        return ([f"{prefix}{x}" for x in cat.objects],
                [(f"{prefix}{m}", f"{prefix}{a}", f"{prefix}{b}") for m, a, b in cat.morphism_triples()],
                {f"{prefix}{x}": f"{prefix}{cat.identity(x)}" for x in cat.objects},
                {(f"{prefix}{g}", f"{prefix}{f}"): f"{prefix}{h}" for (g, f), h in cat.composition_table().items()})

    lo, lm, li, lc = tag("l.", C)
    ro, rm, ri, rc = tag("r.", D)
    return FinCategory(lo + ro, lm + rm, {**li, **ri}, {**lc, **rc}, name or f"{C.name}+{D.name}")


def free_dag_category(rng: random.Random, max_objects: int = 5,
                      max_morphisms: int = 25) -> FinCategory:
    """Path category of a random DAG with parallel edges allowed; loop-free and usually not thin."""
    for _ in range(100):
        n = rng.randint(1, max_objects)
        objects = [str(i) for i in range(n)]
        edges = [(f"e{k}", str(i), str(j)) for k, (i, j) in enumerate(
            (i, j) for i in range(n) for j in range(i + 1, n) for _ in range(rng.choice([0, 0, 1, 1, 2])))]
        chains = {f"id{x}": ((), x, x) for x in objects}
        frontier = [((name,), a, b) for name, a, b in edges]
        while frontier and len(chains) <= max_morphisms:
            nxt = []
            for path, a, b in frontier:
                mid = ".".join(path)
                chains[mid] = (path, a, b)
                nxt += [(path + (name,), a, d) for name, c, d in edges if c == b]
            frontier = nxt
        if frontier or len(chains) > max_morphisms:
            continue
        by_path = {path: mid for mid, (path, _, _) in chains.items() if path}
        morphisms = [(mid, a, b) for mid, (_, a, b) in chains.items()]
        composition = {}
        for fid, (fp, fa, fb) in chains.items():
            for gid, (gp, ga, gb) in chains.items():
                if ga != fb:
                    continue
                path = fp + gp
                composition[(gid, fid)] = by_path[path] if path else f"id{fa}"
        return FinCategory(objects, morphisms, {x: f"id{x}" for x in objects}, composition,
                           f"dag{n}")
    raise WorkbenchError("could not draw a path category within the morphism bound")


def random_category(rng: random.Random, max_objects: int = 5, max_morphisms: int = 25) -> FinCategory:
    """One of: preorder, cyclic monoid, path category, or a disjoint union of two of them."""
    while True:
        kind = rng.choice(["preorder", "monoid", "dag", "union"])
        if kind == "preorder":
            C = random_preorder(rng, max_objects)
        elif kind == "monoid":
            C = cyclic_monoid(rng.randint(0, 3), rng.randint(1, 4))
        elif kind == "dag":
            C = free_dag_category(rng, max_objects, max_morphisms)
        else:
            C = disjoint_union(random_preorder(rng, max(1, max_objects - 1)),
                               cyclic_monoid(rng.randint(0, 2), rng.randint(1, 3)))
        if len(C.objects) <= max_objects and len(C.morphisms) <= max_morphisms:
            return C


def random_loop_free(rng: random.Random, max_objects: int = 5, max_morphisms: int = 25) -> FinCategory:
    if rng.random() < 0.5:
        return random_preorder(rng, max_objects, acyclic=True, density=0.4)
    return free_dag_category(rng, max_objects, max_morphisms)


# ── Functors ──────────────────────────────────────────────────────────────────

def random_endofunctor(rng: random.Random, C: FinCategory, pool: int = 300) -> Functor:
    """A uniformly drawn member of the first ``pool`` endofunctors in canonical order."""
    functors = list(enumerate_functors(C, C, limit=pool))
    return rng.choice(functors)


def random_iso_pair(rng: random.Random, C: FinCategory) -> tuple:
    """(F, G, η) with η: F ≅ G built by conjugating F with random isomorphisms."""
    F = random_endofunctor(rng, C)
    eta, obj_map = {}, {}
    for x in C.objects:
        fx = F.on_object(x)
        options = [(y, i) for y in C.objects for i in isomorphisms(C, fx, y)]
        obj_map[x], eta[x] = rng.choice(options)
    mor_map = {}
    for f in C.morphisms:
        back = find_inverse(C, eta[C.dom(f)])
        mor_map[f] = C.compose_path(eta[C.cod(f)], F.on_morphism(f), back)
    G = Functor(C, C, obj_map, mor_map, f"{F.name}'")
    return F, G, NatTransformation(F, G, eta, "eta")


# ── Matrices and groups ───────────────────────────────────────────────────────

def random_int_matrix(rng: random.Random, max_size: int = 6, lo: int = -9, hi: int = 9,
                      rows: Optional[int] = None, cols: Optional[int] = None) -> IntMatrix:
    r = rows if rows is not None else rng.randint(1, max_size)
    c = cols if cols is not None else rng.randint(1, max_size)
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], c)


def random_finite_group(rng: random.Random, max_generators: int = 3, max_order: int = 64) -> PresentedAbGroup:
    """A presented group with a full-rank relation matrix, so finite; order capped."""
    while True:
        k = rng.randint(0, max_generators)
        extra = rng.randint(0, 2)
        rel = IntMatrix.from_rows(
            [[rng.randint(-6, 6) for _ in range(k + extra)] for _ in range(k)], k + extra)
        G = PresentedAbGroup(k, rel)
        order = G.order
        if order is not None and order <= max_order:
            return G


def all_vectors(moduli, limit: int = 10_000) -> list:
    """Every vector with coordinate i in range(moduli[i])."""
    total = 1
    for m in moduli:
        total *= m
    if total > limit:
        raise WorkbenchError(f"{total} vectors exceed the enumeration limit {limit}")
    return [tuple(v) for v in product(*(range(m) for m in moduli))]
