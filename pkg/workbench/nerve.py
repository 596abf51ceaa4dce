"""
nerve.py — normalized nerve chains, homology and Lefschetz certificates.

An n-simplex is an identity-free composable chain (φ0, …, φn-1) stored as a
tuple of morphism ids in path order; 0-simplices are 1-tuples holding an
object id. Face i drops φ0 (i = 0), drops the last arrow (i = n) or
composes φi∘φi-1; a face containing an identity is sent to zero.
"""

from dataclasses import dataclass, field
from typing import Optional

import sympy

from .abgrp import AbGroupInvariants, IntMatrix, chain_homology
from .errors import DegreeOutOfRange, NerveNotFinite, NotAComplex, ValidationReport, WorkbenchError
from .fincat import FinCategory, Functor, NatTransformation, validate_nat_transformation
from .fixpoint import strict_fixed_points


# ── Loop-freeness ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class LoopFreeReport:
    loop_free: bool
    longest_chain: Optional[int] = None

    def __bool__(self) -> bool:
        return self.loop_free


def is_loop_free(C: FinCategory) -> LoopFreeReport:
    for m in C.morphisms:
        if C.dom(m) == C.cod(m) and not C.is_identity(m):
            return LoopFreeReport(False)
    succ = {x: sorted({C.cod(m) for y in C.objects for m in C.hom(x, y) if y != x})
            for x in C.objects}
    longest: dict = {}
    visiting: set = set()

    def depth(x: str) -> Optional[int]:
        if x in longest:
            return longest[x]
        if x in visiting:
            return None
        visiting.add(x)
        best = 0
        for y in succ[x]:
            d = depth(y)
            if d is None:
                return None
            best = max(best, d + 1)
        visiting.discard(x)
        longest[x] = best
        return best

    result = 0
    for x in C.objects:
        d = depth(x)
        if d is None:
            return LoopFreeReport(False)
        result = max(result, d)
    return LoopFreeReport(True, result)


def has_initial_object(C: FinCategory) -> Optional[str]:
    return next((x for x in C.objects if all(len(C.hom(x, y)) == 1 for y in C.objects)), None)


def has_terminal_object(C: FinCategory) -> Optional[str]:
    return next((x for x in C.objects if all(len(C.hom(y, x)) == 1 for y in C.objects)), None)


# ── Nerve ─────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class NerveTruncation:
    category: FinCategory
    max_dim: int
    simplices: tuple
    exact: bool
    index: tuple = field(default=(), compare=False, repr=False)

    @property
    def counts(self) -> list:
        return [len(s) for s in self.simplices]


def nerve(C: FinCategory, N: int) -> NerveTruncation:
    if N < 0:
        raise DegreeOutOfRange("nerve truncation degree must be non-negative", (N,))
    arrows = [m for m in C.morphisms if not C.is_identity(m)]
    levels = [[(x,) for x in C.objects]]
    if N >= 1:
        levels.append([(m,) for m in arrows])
    for _ in range(2, N + 1):
        levels.append([chain + (m,) for chain in levels[-1] for m in arrows
                       if C.dom(m) == C.cod(chain[-1])])
    simplices = tuple(tuple(sorted(level)) for level in levels)
    report = is_loop_free(C)
    exact = report.loop_free and report.longest_chain <= N
    index = tuple({s: i for i, s in enumerate(level)} for level in simplices)
    return NerveTruncation(C, N, simplices, exact, index)


def _face(C: FinCategory, simplex: tuple, i: int) -> Optional[tuple]:
    n = len(simplex)
    if n == 1:
        return (C.cod(simplex[0]),) if i == 0 else (C.dom(simplex[0]),)
    if i == 0:
        return simplex[1:]
    if i == n:
        return simplex[:-1]
    composite = C.compose(simplex[i], simplex[i - 1])
    if C.is_identity(composite):
        return None
    return simplex[:i - 1] + (composite,) + simplex[i + 1:]


@dataclass(frozen=True)
class ChainComplexZ:
    boundaries: tuple
    dims: tuple
    exact: bool = True

    @property
    def max_dim(self) -> int:
        return len(self.dims) - 1


def chain_complex(nv: NerveTruncation) -> ChainComplexZ:
    C = nv.category
    boundaries = [IntMatrix.zeros(0, len(nv.simplices[0]))]
    for n in range(1, nv.max_dim + 1):
        rows = [[0] * len(nv.simplices[n]) for _ in nv.simplices[n - 1]]
        for j, s in enumerate(nv.simplices[n]):
            for i in range(n + 1):
                face = _face(C, s, i)
                if face is not None:
                    rows[nv.index[n - 1][face]][j] += (-1) ** i
        boundaries.append(IntMatrix.from_rows(rows, len(nv.simplices[n])))
    for n in range(2, len(boundaries)):
        if not (boundaries[n - 1] @ boundaries[n]).is_zero():
            raise NotAComplex(f"boundary squares to a nonzero map in degree {n}", (n,))
    return ChainComplexZ(tuple(boundaries), tuple(len(s) for s in nv.simplices), nv.exact)


def _incoming(cx: ChainComplexZ, n: int) -> IntMatrix:
    if n + 1 <= cx.max_dim:
        return cx.boundaries[n + 1]
    return IntMatrix.zeros(cx.dims[n], 0)


def homology(cx: ChainComplexZ, n: int) -> AbGroupInvariants:
    """H_n = ker d_n / im d_{n+1}; meaningful when the truncation is exact."""
    if not 0 <= n <= cx.max_dim:
        raise DegreeOutOfRange(f"degree {n} outside 0..{cx.max_dim}", (n,))
    return chain_homology(cx.boundaries[n], _incoming(cx, n), cx.dims[n])


def betti_numbers(C: FinCategory, N: int) -> list:
    cx = chain_complex(nerve(C, N))
    return [homology(cx, n).free_rank for n in range(N + 1)]


def euler_characteristic(nv: NerveTruncation) -> int:
    return sum((-1) ** n * c for n, c in enumerate(nv.counts))


# ── Induced maps ──────────────────────────────────────────────────────────────

def _image(F: Functor, simplex: tuple, n: int) -> Optional[tuple]:
    D = F.target
    if n == 0:
        return (F.on_object(simplex[0]),)
    image = tuple(F.on_morphism(m) for m in simplex)
    if any(D.is_identity(m) for m in image):
        return None
    return image


def induced_chain_map(F: Functor, nv: NerveTruncation) -> tuple:
    """Per-degree matrices of NF on normalized chains, checked against the boundaries."""
    if F.source != nv.category or F.target != nv.category:
        raise WorkbenchError("functor is not an endofunctor of the nerve's category")
    maps = []
    for n, level in enumerate(nv.simplices):
        rows = [[0] * len(level) for _ in level]
        for j, s in enumerate(level):
            image = _image(F, s, n)
            if image is not None:
                rows[nv.index[n][image]][j] = 1
        maps.append(IntMatrix.from_rows(rows, len(level)))
    cx = chain_complex(nv)
    for n in range(1, len(maps)):
        if cx.boundaries[n] @ maps[n] != maps[n - 1] @ cx.boundaries[n]:
            raise WorkbenchError(f"induced chain map does not commute with d_{n}", (n,))
    return tuple(maps)


# ── Lefschetz numbers ─────────────────────────────────────────────────────────

def _sym(M: IntMatrix) -> sympy.Matrix:
    if not M.rows or not M.cols:
        return sympy.zeros(M.rows, M.cols)
    return sympy.Matrix(M.to_lists())


def _homology_trace(d_out: IntMatrix, d_in: IntMatrix, chain_map: IntMatrix, dim: int) -> sympy.Rational:
    """Trace of the map induced on H_n(·; ℚ) by a chain map."""
    if not dim:
        return sympy.Integer(0)
    if d_out.rows:
        cycles = _sym(d_out).nullspace()
    else:
        cycles = [sympy.eye(dim)[:, j] for j in range(dim)]
    boundary = _sym(d_in).columnspace() if d_in.rows and d_in.cols else []
    basis = list(boundary)
    complement = []
    for z in cycles:
        if sympy.Matrix.hstack(*(basis + [z])).rank() > len(basis):
            basis.append(z)
            complement.append(len(basis) - 1)
    if not complement:
        return sympy.Integer(0)
    P = sympy.Matrix.hstack(*basis)
    left_inverse = (P.T * P).inv() * P.T
    M = _sym(chain_map)
    total = sympy.Integer(0)
    for j in complement:
        coords = left_inverse * (M * basis[j])
        total += coords[j]
    return total


@dataclass(frozen=True)
class LefschetzReport:
    number: int
    chain_traces: tuple
    homology_traces: tuple

    def as_dict(self) -> dict:
        return {"lefschetz": self.number, "chain_traces": list(self.chain_traces),
                "homology_traces": [int(t) if t == int(t) else str(t) for t in self.homology_traces]}


def _require_finite_nerve(C: FinCategory, N: Optional[int]) -> int:
    report = is_loop_free(C)
    if not report.loop_free:
        raise NerveNotFinite(f"category {C.name!r} has loops; its nerve is not finite")
    if N is None:
        return report.longest_chain
    if report.longest_chain > N:
        raise NerveNotFinite(
            f"longest chain {report.longest_chain} exceeds degree bound {N}", (report.longest_chain, N))
    return N


def lefschetz_report(F: Functor, N: Optional[int] = None) -> LefschetzReport:
    """Chain-level and homology-level alternating traces; they must agree."""
    if not F.is_endofunctor:
        raise WorkbenchError("Lefschetz numbers need an endofunctor")
    N = _require_finite_nerve(F.source, N)
    nv = nerve(F.source, N)
    cx = chain_complex(nv)
    maps = induced_chain_map(F, nv)
    chain_traces = tuple(m.trace() for m in maps)
    homology_traces = tuple(
        _homology_trace(cx.boundaries[n], _incoming(cx, n), maps[n], cx.dims[n]) for n in range(N + 1))
    chain_level = sum((-1) ** n * t for n, t in enumerate(chain_traces))
    homology_level = sum((-1) ** n * t for n, t in enumerate(homology_traces))
    if chain_level != homology_level:
        raise WorkbenchError(
            f"trace mismatch: chain level {chain_level}, homology level {homology_level}")
    return LefschetzReport(chain_level, chain_traces, homology_traces)


def lefschetz_number(F: Functor, N: Optional[int] = None) -> int:
    return lefschetz_report(F, N).number


# ── Strict fixed-point certificates ───────────────────────────────────────────

@dataclass(frozen=True)
class CertificateReport:
    lefschetz: int
    has_initial: bool
    has_terminal: bool
    strict_fixed_points: tuple
    companion: Optional[dict] = None

    @property
    def prediction(self) -> bool:
        return self.lefschetz != 0 or self.has_initial

    @property
    def actual(self) -> bool:
        return bool(self.strict_fixed_points)

    @property
    def consistent(self) -> bool:
        ok = self.actual or not self.prediction
        if self.companion is not None:
            ok = ok and self.companion["consistent"]
        return ok

    def as_dict(self) -> dict:
        data = {"lefschetz": self.lefschetz, "has_initial": self.has_initial,
                "has_terminal": self.has_terminal, "prediction": self.prediction,
                "actual": self.actual, "strict_fixed_points": list(self.strict_fixed_points),
                "consistent": self.consistent}
        if self.companion is not None:
            data["companion"] = self.companion
        return data


def strict_certificate(F: Functor, N: Optional[int] = None,
                       companion: Optional[NatTransformation] = None) -> CertificateReport:
    """Predict strict fixed points from L(NF) and an initial object, then look.

    ``companion`` is a natural transformation η: F → F'. A transformation is
    a homotopy between NF and NF', so F' shares F's Lefschetz number and the
    same prediction applies to its strict fixed points.
    """
    C = F.source
    N = _require_finite_nerve(C, N)
    number = lefschetz_number(F, N)
    extra = None
    if companion is not None:
        if companion.source != F:
            ValidationReport.failed(
                "ComponentTypeMismatch",
                f"{companion.name!r} starts at {companion.source.name!r}, not {F.name!r}",
            ).raise_for_error(f"transformation {companion.name!r}")
        validate_nat_transformation(companion).raise_for_error(f"transformation {companion.name!r}")
        target = companion.target
        number2 = lefschetz_number(target, N)
        strict2 = strict_fixed_points(target)
        extra = {"transformation": companion.name, "functor": target.name, "lefschetz": number2,
                 "prediction": number != 0, "actual": bool(strict2),
                 "strict_fixed_points": list(strict2),
                 "consistent": number2 == number and (bool(strict2) or number == 0)}
    return CertificateReport(number, has_initial_object(C) is not None,
                             has_terminal_object(C) is not None,
                             tuple(strict_fixed_points(F)), extra)
