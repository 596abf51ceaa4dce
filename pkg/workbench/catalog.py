"""
catalog.py — named builders for the standard categories, sites and presheaves.

Poset categories use ``id_x`` for identities and ``x<y`` for the unique
arrow x → y. Subsets of letters are rendered as their sorted letters, the
empty set as ``0``.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .abgrp import AbHom, IntMatrix, cyclic, direct_sum
from .errors import ParseError
from .fincat import FinCategory, Functor, identity_functor
from .sheaf import Presheaf
from .site import AbEnrichment, Biproduct, CoveringFamily, Pretopology, open_cover_pretopology


# ── Posets ────────────────────────────────────────────────────────────────────

def subset_name(subset: Iterable[str]) -> str:
    return "".join(sorted(subset)) or "0"


def preorder_category(elements: Iterable[str], relations: Iterable[Sequence[str]],
                      name: str = "") -> FinCategory:
    """The thin category of the reflexive-transitive closure of ``relations``."""
    elements = [str(x) for x in elements]
    below = {x: {x} for x in elements}
    for x, y in relations:
        if x not in below or y not in below:
            raise ParseError(f"poset {name!r}: relation ({x}, {y}) uses an unknown element")
        below[y].add(x)
    changed = True
    while changed:
        changed = False
        for y in elements:
            grown = set().union(*(below[x] for x in below[y]))
            if grown != below[y]:
                below[y] = grown
                changed = True

    def arrow(x: str, y: str) -> str:
        return f"id_{x}" if x == y else f"{x}<{y}"

    pairs = [(x, y) for y in elements for x in below[y]]
    morphisms = [(arrow(x, y), x, y) for x, y in pairs]
    composition = {(arrow(y, z), arrow(x, y)): arrow(x, z)
                   for x, y in pairs for z in elements if y in below[z]}
    return FinCategory(elements, morphisms, {x: arrow(x, x) for x in elements}, composition, name)


def poset_category(elements: Iterable[str], relations: Iterable[Sequence[str]],
                   name: str = "") -> FinCategory:
    """As ``preorder_category``, rejecting relations that identify two elements."""
    C = preorder_category(elements, relations, name)
    for x, y in combinations(C.objects, 2):
        if C.hom(x, y) and C.hom(y, x):
            raise ParseError(f"poset {name!r}: {x} and {y} are identified by the relations")
    return C


def thin_functor(C: FinCategory, D: FinCategory, obj_map: Mapping[str, str], name: str = "") -> Functor:
    """The functor determined by its object map when D is thin."""
    mor_map = {}
    for f in C.morphisms:
        hom = D.hom(obj_map[C.dom(f)], obj_map[C.cod(f)])
        if len(hom) != 1:
            raise ParseError(f"functor {name!r}: {f} has {len(hom)} candidate images")
        mor_map[f] = hom[0]
    return Functor(C, D, obj_map, mor_map, name)


def chain_poset(n: int, name: str = "") -> FinCategory:
    elements = [str(i) for i in range(n)]
    return poset_category(elements, zip(elements, elements[1:]), name or f"chain{n}")


def subset_lattice(atoms: Sequence[str], name: str = "") -> FinCategory:
    atoms = sorted(atoms)
    subsets = [frozenset(c) for r in range(len(atoms) + 1) for c in combinations(atoms, r)]
    relations = [(subset_name(s), subset_name(s | {a})) for s in subsets for a in atoms if a not in s]
    return poset_category([subset_name(s) for s in subsets], relations,
                          name or f"P({''.join(atoms)})")


def hexagon_poset(name: str = "hexagon") -> FinCategory:
    """Proper nonempty subsets of {a, b, c} under inclusion; its nerve is a circle."""
    singles = ["a", "b", "c"]
    pairs = ["ab", "ac", "bc"]
    return poset_category(singles + pairs, [(s, p) for p in pairs for s in singles if s in p], name)


def hexagon_rotation(C: FinCategory, name: str = "rot") -> Functor:
    step = {"a": "b", "b": "c", "c": "a"}
    return thin_functor(C, C, {x: subset_name(step[ch] for ch in x) for x in C.objects}, name)


# ── Small categories ──────────────────────────────────────────────────────────

def walking_arrow(name: str = "walking_arrow") -> FinCategory:
    return FinCategory(
        ["0", "1"], [("id0", "0", "0"), ("id1", "1", "1"), ("a", "0", "1")],
        {"0": "id0", "1": "id1"},
        {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("a", "id0"): "a", ("id1", "a"): "a"},
        name)


def terminal_category(name: str = "terminal") -> FinCategory:
    return FinCategory(["*"], [("id", "*", "*")], {"*": "id"}, {("id", "id"): "id"}, name)


def discrete_category(objects: Iterable[str], name: str = "") -> FinCategory:
    objects = [str(x) for x in objects]
    return FinCategory(objects, [(f"id_{x}", x, x) for x in objects],
                       {x: f"id_{x}" for x in objects},
                       {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objects},
                       name or f"discrete{len(objects)}")


def codiscrete_groupoid(objects: Iterable[str], name: str = "") -> FinCategory:
    """Exactly one morphism ``x>y`` between any two objects."""
    objects = [str(x) for x in objects]
    return FinCategory(
        objects, [(f"{x}>{y}", x, y) for x in objects for y in objects],
        {x: f"{x}>{x}" for x in objects},
        {(f"{y}>{z}", f"{x}>{y}"): f"{x}>{z}" for x in objects for y in objects for z in objects},
        name or f"codiscrete{len(objects)}")


def parallel_pair(name: str = "parallel_pair") -> FinCategory:
    return FinCategory(
        ["A", "B"], [("idA", "A", "A"), ("idB", "B", "B"), ("f", "A", "B"), ("g", "A", "B")],
        {"A": "idA", "B": "idB"},
        {("idA", "idA"): "idA", ("idB", "idB"): "idB", ("f", "idA"): "f", ("g", "idA"): "g",
         ("idB", "f"): "f", ("idB", "g"): "g"},
        name)


def cyclic_group_category(n: int, name: str = "") -> FinCategory:
    """One object ``*`` with morphisms g0 … g(n-1), g0 the identity."""
    if n < 1:
        raise ParseError("cyclic group order must be positive")
    mids = [f"g{i}" for i in range(n)]
    return FinCategory(["*"], [(m, "*", "*") for m in mids], {"*": "g0"},
                       {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)},
                       name or f"Z{n}")


def cyclic_monoid(index: int, period: int, name: str = "") -> FinCategory:
    """One object; x^index = x^(index+period). ``index = 0`` gives ℤ/period.

    With ``index > 0`` no power of x is mono or epi, so the category is
    balanced without being a groupoid.
    """
    if index < 0 or period < 1:
        raise ParseError("cyclic monoid needs index >= 0 and period >= 1")
    size = index + period

    def reduce(k: int) -> int:
        return k if k < size else index + (k - index) % period

    mids = [f"x{k}" for k in range(size)]
    return FinCategory(["*"], [(m, "*", "*") for m in mids], {"*": "x0"},
                       {(f"x{a}", f"x{b}"): f"x{reduce(a + b)}" for a in range(size) for b in range(size)},
                       name or f"M({index},{period})")


def group_power(C: FinCategory, m: int, name: str = "") -> Functor:
    """g_k ↦ g_{mk} on a cyclic group category."""
    n = len(C.morphisms)
    return Functor(C, C, {"*": "*"}, {f"g{k}": f"g{(m * k) % n}" for k in range(n)}, name or f"pow{m}")


def swap_functor(C: FinCategory, pairing: Mapping[str, str], name: str = "swap") -> Functor:
    """Exchange objects along ``pairing`` in a category whose ids are built from object names."""
    swap = dict(pairing)
    swap.update({v: k for k, v in pairing.items()})
    obj_map = {x: swap.get(x, x) for x in C.objects}
    mor_map = {}
    for f in C.morphisms:
        x, y = obj_map[C.dom(f)], obj_map[C.cod(f)]
        hom = C.hom(x, y)
        if C.is_identity(f):
            mor_map[f] = C.identity(x)
        elif len(hom) == 1:
            mor_map[f] = hom[0]
        else:
            mor_map[f] = f
    return Functor(C, C, obj_map, mor_map, name)


# ── Finite topological spaces ─────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class FiniteSpace:
    points: tuple
    opens: Mapping[str, frozenset]
    name: str = ""

    def __post_init__(self):
        sets = set(self.opens.values())
        for a, b in combinations(sets, 2):
            if a | b not in sets or a & b not in sets:
                raise ParseError(f"space {self.name!r}: opens are not closed under ∪ and ∩")

    def category(self) -> FinCategory:
        names = sorted(self.opens)
        return poset_category(names, [(u, v) for u in names for v in names
                                      if u != v and self.opens[u] <= self.opens[v]], self.name)

    def minimal_open(self, point: str) -> frozenset:
        return frozenset.intersection(*(o for o in self.opens.values() if point in o))

    def components(self, name: str) -> list:
        """Connected components of an open, each a frozenset, ordered by least point."""
        remaining = set(self.opens[name])
        found = []
        while remaining:
            start = min(remaining)
            part, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for y in list(remaining - part):
                    if y in self.minimal_open(x) or x in self.minimal_open(y):
                        part.add(y)
                        stack.append(y)
            remaining -= part
            found.append(frozenset(part))
        return found


def components_presheaf(site: Pretopology, space: FiniteSpace, modulus: int = 2,
                        name: str = "comp") -> Presheaf:
    """Locally constant ℤ/modulus-valued functions: μ(O) = (ℤ/modulus)^{#components of O}."""
    C = site.base
    parts = {o: space.components(o) for o in C.objects}
    values = {o: direct_sum([cyclic(modulus)] * len(parts[o])).group for o in C.objects}
    restrictions = {}
    for f in C.morphisms:
        small, big = C.dom(f), C.cod(f)
        rows = [[int(p <= q) for q in parts[big]] for p in parts[small]]
        restrictions[f] = AbHom(values[big], values[small],
                                IntMatrix.from_rows(rows, len(parts[big])))
    return Presheaf(site, values, restrictions, name)


@dataclass(frozen=True, eq=False)
class SiteBundle:
    space: FiniteSpace
    category: FinCategory
    opens: Pretopology
    small: Pretopology
    symmetry: Functor


def _three_cover_site(space: FiniteSpace, top: str, left: str, right: str, meet: str,
                      pairing: Mapping[str, str], name: str) -> SiteBundle:
    C = space.category()
    arrow = lambda x, y: C.hom(x, y)[0]
    covers = {x: [CoveringFamily((C.identity(x),), x)] for x in C.objects}
    covers[top] += [
        CoveringFamily((arrow(left, top), arrow(right, top)), f"{left}{right}"),
        CoveringFamily((arrow(left, top), arrow(right, top), arrow(meet, top)), f"{left}{right}{meet}"),
    ]
    covers[left].append(CoveringFamily((C.identity(left), arrow(meet, left)), f"{left}{meet}"))
    covers[right].append(CoveringFamily((C.identity(right), arrow(meet, right)), f"{right}{meet}"))
    small = Pretopology(C, covers, name)
    return SiteBundle(space, C, open_cover_pretopology(C, space.opens, f"{name}.opens"), small,
                      swap_functor(C, pairing, f"{name}.sym"))


def pseudocircle(name: str = "pseudocircle") -> SiteBundle:
    """Four points a, b open and c, d closed; its opens U, V overlap in two open points."""
    opens = {"0": frozenset(), "a": frozenset("a"), "b": frozenset("b"), "ab": frozenset("ab"),
             "U": frozenset("abc"), "V": frozenset("abd"), "X": frozenset("abcd")}
    space = FiniteSpace(tuple("abcd"), opens, name)
    return _three_cover_site(space, "X", "U", "V", "ab", {"a": "b", "U": "V"}, name)


def contractible_site(name: str = "contractible") -> SiteBundle:
    """X = U ∪ V with U ∩ V = W, all connected."""
    opens = {"W": frozenset("w"), "U": frozenset("uw"), "V": frozenset("vw"), "X": frozenset("uvw")}
    space = FiniteSpace(tuple("uvw"), opens, name)
    return _three_cover_site(space, "X", "U", "V", "W", {"U": "V"}, name)


# ── Matrix category ───────────────────────────────────────────────────────────

def _matrix_id(rows: int, cols: int, entries: Sequence[int]) -> str:
    return f"{rows}x{cols}:" + ("".join(str(v) for v in entries) or "-")


def matrix_category(modulus: int = 2, max_dim: int = 2, name: str = "") -> tuple:
    """(C, E): objects 0 … max_dim, Hom(m, n) = n×m matrices over ℤ/modulus, entrywise sums."""
    if not 2 <= modulus <= 9:
        raise ParseError("matrix category modulus must be between 2 and 9")
    dims = range(max_dim + 1)
    mats = {(m, n): [tuple(e) for e in product(range(modulus), repeat=m * n)] for m in dims for n in dims}

    def mid(m: int, n: int, e: Sequence[int]) -> str:
        return _matrix_id(n, m, e)

    def mult(n: int, k: int, m: int, g: Sequence[int], f: Sequence[int]) -> tuple:
        # g is n×k, f is k×m
        return tuple(sum(g[i * k + t] * f[t * m + j] for t in range(k)) % modulus
                     for i in range(n) for j in range(m))

    morphisms = [(mid(m, n, e), str(m), str(n)) for (m, n), es in mats.items() for e in es]
    identities = {str(m): mid(m, m, [int(i == j) for i in range(m) for j in range(m)]) for m in dims}
    composition = {}
    for m, k, n in product(dims, repeat=3):
        for f in mats[(m, k)]:
            for g in mats[(k, n)]:
                composition[(mid(k, n, g), mid(m, k, f))] = mid(m, n, mult(n, k, m, g, f))
    C = FinCategory([str(m) for m in dims], morphisms, identities, composition,
                    name or f"Mat(Z/{modulus})")

    addition, zero = {}, {}
    for (m, n), es in mats.items():
        key = (str(m), str(n))
        zero[key] = mid(m, n, [0] * (m * n))
        addition[key] = {(mid(m, n, a), mid(m, n, b)): mid(m, n, [(x + y) % modulus for x, y in zip(a, b)])
                         for a in es for b in es}
    biproducts = {}
    for m, n in product(dims, repeat=2):
        s = m + n
        if s > max_dim:
            continue
        inj_left = mid(m, s, [int(i == j) for i in range(s) for j in range(m)])
        inj_right = mid(n, s, [int(i == j + m) for i in range(s) for j in range(n)])
        proj_left = mid(s, m, [int(j == i) for i in range(m) for j in range(s)])
        proj_right = mid(s, n, [int(j == i + m) for i in range(n) for j in range(s)])
        biproducts[(str(m), str(n))] = Biproduct(str(s), inj_left, inj_right, proj_left, proj_right)
    return C, AbEnrichment(C, addition, zero, biproducts, name=f"{C.name}+")


# ── Builder registry ──────────────────────────────────────────────────────────

def _bundle_entities(bundle: SiteBundle, key: str) -> dict:
    return {
        "categories": {key: bundle.category},
        "pretopologies": {key: bundle.small, f"{key}.opens": bundle.opens},
        "functors": {f"{key}.sym": bundle.symmetry},
        "spaces": {key: bundle.space},
    }


def _build_poset(key, params):
    return {"categories": {key: poset_category(params["elements"], params.get("order", ()), key)}}


def _build_hexagon(key, params):
    C = hexagon_poset(key)
    return {"categories": {key: C}, "functors": {f"{key}.rot": hexagon_rotation(C, f"{key}.rot")}}


def _build_codiscrete(key, params):
    C = codiscrete_groupoid(params.get("objects", ["A", "B"]), key)
    entities = {"categories": {key: C}}
    if len(C.objects) == 2:
        x, y = C.objects
        entities["functors"] = {f"{key}.swap": swap_functor(C, {x: y}, f"{key}.swap")}
    return entities


def _build_discrete(key, params):
    C = discrete_category(params.get("objects", ["A", "B"]), key)
    entities = {"categories": {key: C}}
    if len(C.objects) == 2:
        x, y = C.objects
        entities["functors"] = {f"{key}.swap": swap_functor(C, {x: y}, f"{key}.swap")}
    return entities


def _build_parallel(key, params):
    C = parallel_pair(key)
    swap = Functor(C, C, {"A": "A", "B": "B"}, {"idA": "idA", "idB": "idB", "f": "g", "g": "f"},
                   f"{key}.swap")
    return {"categories": {key: C}, "functors": {f"{key}.swap": swap}}


def _build_space(key, params):
    opens = {str(k): frozenset(str(p) for p in v) for k, v in params["opens"].items()}
    points = sorted(set().union(*opens.values())) if opens else []
    space = FiniteSpace(tuple(points), opens, key)
    C = space.category()
    return {"categories": {key: C}, "pretopologies": {key: open_cover_pretopology(C, opens, key)},
            "spaces": {key: space}}


def _build_matrix(key, params):
    C, E = matrix_category(int(params.get("modulus", 2)), int(params.get("max_dim", 2)), key)
    return {"categories": {key: C}, "enrichments": {key: E},
            "functors": {f"{key}.id": identity_functor(C, f"{key}.id")}}


BUILDERS: dict = {
    "poset": _build_poset,
    "subset_lattice": lambda key, p: {"categories": {key: subset_lattice(p.get("atoms", "abc"), key)}},
    "chain_poset": lambda key, p: {"categories": {key: chain_poset(int(p.get("n", 3)), key)}},
    "cyclic_group": lambda key, p: {"categories": {key: cyclic_group_category(int(p.get("n", 2)), key)}},
    "cyclic_monoid": lambda key, p: {"categories": {
        key: cyclic_monoid(int(p.get("index", 1)), int(p.get("period", 1)), key)}},
    "codiscrete": _build_codiscrete,
    "discrete": _build_discrete,
    "hexagon": _build_hexagon,
    "walking_arrow": lambda key, p: {"categories": {key: walking_arrow(key)}},
    "parallel_pair": _build_parallel,
    "terminal": lambda key, p: {"categories": {key: terminal_category(key)}},
    "finite_space": _build_space,
    "pseudocircle": lambda key, p: _bundle_entities(pseudocircle(key), key),
    "contractible": lambda key, p: _bundle_entities(contractible_site(key), key),
    "matrix_category": _build_matrix,
}


def build(builder: str, key: str, params: Optional[Mapping] = None) -> dict:
    """Entities produced by a named builder, grouped by document section."""
    try:
        fn: Callable = BUILDERS[builder]
    except KeyError:
        raise ParseError(f"unknown catalog builder {builder!r}; known: {', '.join(sorted(BUILDERS))}") from None
    try:
        return fn(key, dict(params or {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"catalog entry {key!r}: bad parameters for {builder}: {exc}") from exc
