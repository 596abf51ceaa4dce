"""
proptest.py — seeded property suites with independent brute-force oracles.

A suite draws structures from ``generators``, runs the library operation and
compares it with an oracle written separately from the library code. Any
disagreement is collected as a failure record; a suite passes when there are
none.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd
from typing import Callable, Optional

from . import catalog, generators
from .abgrp import IntMatrix, smith_normal_form
from .errors import NoPullback, NoPushout, WorkbenchError
from .fincat import (
    FinCategory,
    constant_functor,
    enumerate_functors,
    identity_functor,
    is_full,
    validate_category,
)
from .fixpoint import fixed_points, hom_colimit, transport
from .limits import (
    base_change,
    check_adjunction,
    cobase_change,
    fixpoint_criterion,
    postcompose,
    precompose,
)
from .nerve import euler_characteristic, is_loop_free, lefschetz_report, nerve, strict_certificate


@dataclass
class SuiteResult:
    name: str
    seed: int
    trials: int
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **details) -> None:
        self.failures.append(details)

    def as_dict(self) -> dict:
        return {"suite": self.name, "seed": self.seed, "trials": self.trials,
                "checked": self.checked, "skipped": self.skipped, "ok": self.ok,
                "failures": self.failures[:20]}


# ── Oracles ───────────────────────────────────────────────────────────────────

def category_laws_hold(C: FinCategory) -> bool:
    """Unit and associativity laws checked straight from the raw tables."""
    dom = {m: d for m, d, _ in C.morphism_triples()}
    cod = {m: c for m, _, c in C.morphism_triples()}
    ids = C.identities_table()
    table = C.composition_table()
    if set(ids) != set(C.objects) or any(dom[i] != x or cod[i] != x for x, i in ids.items()):
        return False
    for g, f in product(C.morphisms, repeat=2):
        defined = (g, f) in table
        if defined != (cod[f] == dom[g]):
            return False
        if defined and (dom[table[(g, f)]] != dom[f] or cod[table[(g, f)]] != cod[g]):
            return False
    for f in C.morphisms:
        if table[(f, ids[dom[f]])] != f or table[(ids[cod[f]], f)] != f:
            return False
    for h, g, f in product(C.morphisms, repeat=3):
        if cod[f] == dom[g] and cod[g] == dom[h]:
            if table[(h, table[(g, f)])] != table[(table[(h, g)], f)]:
                return False
    return True


def colimit_size_oracle(C: FinCategory, F, X: str) -> int:
    """Connected components of the graph of (X_i, φ) pairs, by depth-first search."""
    nodes = [(xi, phi) for xi in C.objects for phi in C.hom(X, F.on_object(xi))]
    edges = {n: set() for n in nodes}
    for f in C.morphisms:
        for phi in C.hom(X, F.on_object(C.dom(f))):
            a, b = (C.dom(f), phi), (C.cod(f), C.compose(F.on_morphism(f), phi))
            edges[a].add(b)
            edges[b].add(a)
    seen, count = set(), 0
    for n in nodes:
        if n in seen:
            continue
        count += 1
        stack = [n]
        while stack:
            cur = stack.pop()
            if cur not in seen:
                seen.add(cur)
                stack.extend(edges[cur] - seen)
    return count


def determinant_divisors(M: IntMatrix) -> list:
    """gcd of all k×k minors for k = 1 … min(rows, cols)."""
    out = []
    for k in range(1, min(M.rows, M.cols) + 1):
        g = 0
        for rows in combinations(range(M.rows), k):
            for cols in combinations(range(M.cols), k):
                g = gcd(g, M.select_rows(rows).select_columns(cols).determinant())
        out.append(g)
    return out


def _mutate(C: FinCategory, rng: random.Random) -> Optional[FinCategory]:
    """Change one composition entry to another morphism with the same ends."""
    table = C.composition_table()
    keys = [k for k, h in sorted(table.items())
            if len(C.hom(C.dom(h), C.cod(h))) > 1]
    if not keys:
        return None
    key = rng.choice(keys)
    h = table[key]
    table[key] = rng.choice([m for m in C.hom(C.dom(h), C.cod(h)) if m != h])
    return FinCategory(C.objects, C.morphism_triples(), C.identities_table(), table, C.name)


# ── Suites ────────────────────────────────────────────────────────────────────

def suite_axioms(rng: random.Random, result: SuiteResult) -> None:
    for _ in range(result.trials):
        C = generators.random_category(rng)
        for candidate in (C, _mutate(C, rng)):
            if candidate is None:
                result.skipped += 1
                continue
            verdict = validate_category(candidate).ok
            if verdict != category_laws_hold(candidate):
                result.fail(category=candidate.name, validator=verdict,
                            composition=sorted(candidate.composition_table().items()))
            result.checked += 1


def suite_transport(rng: random.Random, result: SuiteResult) -> None:
    for _ in range(result.trials):
        C = rng.choice([
            lambda: generators.random_preorder(rng, 4, density=0.5),
            lambda: catalog.cyclic_monoid(0, rng.randint(1, 4)),
            lambda: catalog.codiscrete_groupoid("ABC"[:rng.randint(1, 3)]),
        ])()
        F, G, eta = generators.random_iso_pair(rng, C)
        res = transport(eta)
        S, T = res.forward.source, res.forward.target
        same_size = len(S.objects) == len(T.objects) and len(S.morphisms) == len(T.morphisms)
        if not res.round_trip_identity or not same_size:
            result.fail(category=C.name, functor=F.name, components=dict(eta.components))
        result.checked += 1


def suite_homcolim(rng: random.Random, result: SuiteResult) -> None:
    arrow = catalog.walking_arrow()
    if hom_colimit(arrow, constant_functor(arrow, arrow, "0"), "1").size != 0:
        result.fail(case="constant functor at 0 on the walking arrow")
    result.checked += 1
    for _ in range(result.trials):
        C = generators.random_category(rng, max_objects=4, max_morphisms=16)
        F = generators.random_endofunctor(rng, C)
        if not is_full(F):
            result.skipped += 1
            continue
        for X in sorted({p.object for p in fixed_points(F)}):
            size = hom_colimit(C, F, X).size
            if size != 1 or colimit_size_oracle(C, F, X) != size:
                result.fail(category=C.name, functor=F.name, object=X, size=size)
            result.checked += 1


def _loop_free_fixtures() -> list:
    hexagon = catalog.hexagon_poset()
    return [catalog.walking_arrow(), hexagon, catalog.chain_poset(3),
            catalog.discrete_category("xyz"), catalog.parallel_pair()]


def suite_hopf(rng: random.Random, result: SuiteResult) -> None:
    cases = [(C, F) for C in _loop_free_fixtures() for F in enumerate_functors(C, C, limit=40)]
    for _ in range(result.trials):
        C = generators.random_loop_free(rng)
        cases.append((C, generators.random_endofunctor(rng, C)))
    for C, F in cases:
        try:
            report = lefschetz_report(F)
        except WorkbenchError as exc:
            result.fail(category=C.name, functor=F.name, error=str(exc))
            continue
        homology_level = sum((-1) ** n * t for n, t in enumerate(report.homology_traces))
        if homology_level != report.number:
            result.fail(category=C.name, functor=F.name, lefschetz=report.number)
        result.checked += 1
    for C in _loop_free_fixtures():
        nv = nerve(C, is_loop_free(C).longest_chain)
        if lefschetz_report(identity_functor(C)).number != euler_characteristic(nv):
            result.fail(category=C.name, case="L(Id) differs from the Euler characteristic")
        result.checked += 1


def suite_strict(rng: random.Random, result: SuiteResult) -> None:
    categories = [catalog.chain_poset(3)] + [generators.random_loop_free(rng) for _ in range(result.trials)]
    for C in categories:
        limit = None if len(C.objects) <= 4 else 60
        for F in enumerate_functors(C, C, limit=limit):
            cert = strict_certificate(F)
            if not cert.consistent:
                result.fail(category=C.name, functor=F.name, **cert.as_dict())
            result.checked += 1


def suite_snf(rng: random.Random, result: SuiteResult) -> None:
    for _ in range(result.trials):
        M = generators.random_int_matrix(rng)
        snf = smith_normal_form(M)
        d = [snf.D[i, i] for i in range(min(M.rows, M.cols))]
        off_diagonal = any(snf.D[i, j] for i in range(M.rows) for j in range(M.cols) if i != j)
        chain = all(b % a == 0 if a else b == 0 for a, b in zip(d, d[1:]))
        divisors = determinant_divisors(M)
        products, running = [], 1
        for v in d:
            running *= v
            products.append(running)
        checks = {
            "UMV=D": snf.U @ M @ snf.V == snf.D,
            "unimodular": abs(snf.U.determinant()) == 1 and abs(snf.V.determinant()) == 1,
            "diagonal": not off_diagonal and all(v >= 0 for v in d),
            "divisibility": chain,
            "determinant_divisors": products == divisors,
        }
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            result.fail(matrix=M.to_lists(), failed=failed)
        result.checked += 1


def suite_adjunction(rng: random.Random, result: SuiteResult) -> None:
    for atoms in ("ab", "abc"):
        C = catalog.subset_lattice(atoms)
        for sigma in C.morphisms:
            pairs = {"postcompose/base_change": (postcompose(C, sigma), base_change(C, sigma)),
                     "cobase_change/precompose": (cobase_change(C, sigma), precompose(C, sigma))}
            for label, (L, R) in pairs.items():
                if not check_adjunction(L, R).found:
                    result.fail(lattice=atoms, sigma=sigma, pair=label)
                result.checked += 1


def _criterion_cases(C: FinCategory, limit: Optional[int] = None):
    for F in enumerate_functors(C, C, limit=limit):
        for X in C.objects:
            for sigma in C.hom(X, F.on_object(X)):
                yield F, X, sigma


def suite_criterion(rng: random.Random, result: SuiteResult) -> None:
    groupoids = [catalog.codiscrete_groupoid("AB"), catalog.codiscrete_groupoid("ABC"),
                 catalog.cyclic_group_category(2), catalog.cyclic_group_category(3)]
    for C in groupoids:
        for F, X, sigma in _criterion_cases(C):
            report = fixpoint_criterion(C, F, X, sigma)
            if not (report.sigma_iso and report.tau_equiv and report.s_equiv and report.balanced):
                result.fail(category=C.name, functor=F.name, sigma=sigma, **report.as_dict())
            result.checked += 1
    # balanced, not groupoids: σ iso iff both slice functors are equivalences
    monoids = [catalog.cyclic_monoid(1, 1), catalog.cyclic_monoid(2, 1), catalog.cyclic_monoid(1, 2)]
    for C in monoids:
        for F, X, sigma in _criterion_cases(C):
            try:
                report = fixpoint_criterion(C, F, X, sigma)
            except (NoPullback, NoPushout):
                result.skipped += 1
                continue
            if not (report.balanced and report.consistent):
                result.fail(category=C.name, functor=F.name, sigma=sigma, **report.as_dict())
            result.checked += 1
    for _ in range(result.trials):
        C = generators.random_category(rng, max_objects=4, max_morphisms=16)
        cases = list(_criterion_cases(C, limit=30))
        if not cases:
            result.skipped += 1
            continue
        F, X, sigma = rng.choice(cases)
        try:
            report = fixpoint_criterion(C, F, X, sigma)
        except (NoPullback, NoPushout):
            result.skipped += 1
            continue
        if not report.consistent:
            result.fail(category=C.name, functor=F.name, sigma=sigma, **report.as_dict())
        result.checked += 1


SUITES: dict = {
    "axioms": (suite_axioms, 500),
    "transport": (suite_transport, 100),
    "homcolim": (suite_homcolim, 100),
    "hopf": (suite_hopf, 200),
    "strict": (suite_strict, 20),
    "snf": (suite_snf, 1000),
    "adjunction": (suite_adjunction, 1),
    "criterion": (suite_criterion, 50),
}


def run_suite(name: str, seed: int = 0, trials: Optional[int] = None) -> SuiteResult:
    try:
        fn, default_trials = SUITES[name]
    except KeyError:
        raise WorkbenchError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    result = SuiteResult(name, seed, default_trials if trials is None else trials)
    fn(random.Random(seed), result)
    return result
