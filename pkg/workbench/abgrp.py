"""
abgrp.py — exact integer linear algebra and finitely presented abelian groups.

A PresentedAbGroup with k generators and relation matrix R (k rows, one
column per relator) is ℤ^k / colspan(R). Homomorphisms carry the matrix of
generator images. Every construction is exact: Python integers throughout,
elimination on sparse rows, pivots of minimal absolute value.

    Z2 = cyclic(2)
    K, inclusion = kernel(AbHom(direct_sum([Z2, Z2]).group, Z2, IntMatrix.from_rows([[1, 1]])))
    K.invariants.as_list()   # [2]
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DegreeOutOfRange,
    IllTypedHom,
    NotAComplex,
    NotParallel,
    WorkbenchError,
)


# ── Integer matrices ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise WorkbenchError(f"matrix entries do not match shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls.from_rows(([c[i] for c in columns] for i in range(rows)), len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows(
            ([values[i] if i == j and i < len(values) else 0 for j in range(cols)]
             for i in range(rows)), cols)

    @staticmethod
    def block_diagonal(blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.entries):
                out[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return IntMatrix.from_rows(out, cols)

    def __getitem__(self, ij: tuple) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.entries, self.cols) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise WorkbenchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self.entries:
            acc = [0] * other.cols
            for k, v in enumerate(r):
                if v:
                    for j, w in enumerate(other.entries[k]):
                        if w:
                            acc[j] += v * w
            out.append(acc)
        return IntMatrix.from_rows(out, other.cols)

    def apply(self, vector: Sequence[int]) -> tuple:
        return tuple(sum(v * x for v, x in zip(r, vector) if v) for r in self.entries)

    def _same_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise WorkbenchError("matrix shapes differ")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)), self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_rows(([-v for v in r] for r in self.entries), self.cols)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        cols = self.cols + sum(o.cols for o in others)
        rows = [list(r) for r in self.entries]
        for o in others:
            if o.rows != self.rows:
                raise WorkbenchError("hstack needs equal row counts")
            for acc, r in zip(rows, o.entries):
                acc.extend(r)
        return IntMatrix.from_rows(rows, cols)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        for o in others:
            if o.cols != self.cols:
                raise WorkbenchError("vstack needs equal column counts")
        rows = list(self.entries) + [r for o in others for r in o.entries]
        return IntMatrix.from_rows(rows, self.cols)

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        return IntMatrix.from_rows((self.entries[i] for i in indices), self.cols)

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix.from_rows(([r[j] for j in idx] for r in self.entries), len(idx))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def to_lists(self) -> list:
        return [list(r) for r in self.entries]

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant of a square matrix."""
        if self.rows != self.cols:
            raise WorkbenchError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_lists()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


# ── Sparse elimination ────────────────────────────────────────────────────────

def _axpy(target: dict, source: dict, c: int) -> None:
    """target += c * source on sparse vectors."""
    if not c:
        return
    for k, v in source.items():
        nv = target.get(k, 0) + c * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class _SparseRows:
    def __init__(self, rows: list, ncols: int):
        self.rows = rows
        self.ncols = ncols

    @classmethod
    def from_matrix(cls, M: IntMatrix) -> "_SparseRows":
        return cls([{j: v for j, v in enumerate(r) if v} for r in M.entries], M.cols)

    @classmethod
    def identity(cls, n: int) -> "_SparseRows":
        return cls([{i: 1} for i in range(n)], n)

    def add_row(self, i: int, j: int, c: int) -> None:
        _axpy(self.rows[i], self.rows[j], c)

    def swap_rows(self, i: int, j: int) -> None:
        self.rows[i], self.rows[j] = self.rows[j], self.rows[i]

    def negate_row(self, i: int) -> None:
        self.rows[i] = {k: -v for k, v in self.rows[i].items()}

    def add_col(self, i: int, j: int, c: int) -> None:
        """column j += c * column i"""
        for row in self.rows:
            v = row.get(i)
            if v:
                nv = row.get(j, 0) + c * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)

    def swap_cols(self, i: int, j: int) -> None:
        for row in self.rows:
            vi, vj = row.pop(i, None), row.pop(j, None)
            if vi:
                row[j] = vi
            if vj:
                row[i] = vj

    def negate_col(self, i: int) -> None:
        for row in self.rows:
            if i in row:
                row[i] = -row[i]

    def to_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(
            ([row.get(j, 0) for j in range(self.ncols)] for row in self.rows), self.ncols)


class _Smith:
    """Diagonalizes a matrix in place, optionally tracking U, U⁻¹, V, V⁻¹."""

    def __init__(self, M: IntMatrix, track: bool = True, track_cols: Optional[bool] = None):
        self.m, self.n = M.rows, M.cols
        self.a = _SparseRows.from_matrix(M)
        self.track = track
        self.track_cols = track if track_cols is None else track_cols
        if track:
            self.U, self.Ui = _SparseRows.identity(self.m), _SparseRows.identity(self.m)
        if self.track_cols:
            self.V, self.Vi = _SparseRows.identity(self.n), _SparseRows.identity(self.n)
        self._run()
        self.diagonal = tuple(self.a.rows[i].get(i, 0) for i in range(min(self.m, self.n)))

    # row ops act on U and (inversely) on U⁻¹; column ops on V and V⁻¹
    def _row_add(self, i, j, c):
        self.a.add_row(i, j, c)
        if self.track:
            self.U.add_row(i, j, c)
            self.Ui.add_col(i, j, -c)

    def _row_swap(self, i, j):
        if i == j:
            return
        self.a.swap_rows(i, j)
        if self.track:
            self.U.swap_rows(i, j)
            self.Ui.swap_cols(i, j)

    def _row_negate(self, i):
        self.a.negate_row(i)
        if self.track:
            self.U.negate_row(i)
            self.Ui.negate_col(i)

    def _col_add(self, i, j, c):
        self.a.add_col(i, j, c)
        if self.track_cols:
            self.V.add_col(i, j, c)
            self.Vi.add_row(i, j, -c)

    def _col_swap(self, i, j):
        if i == j:
            return
        self.a.swap_cols(i, j)
        if self.track_cols:
            self.V.swap_cols(i, j)
            self.Vi.swap_rows(i, j)

    def _pivot(self, t):
        best = None
        for i in range(t, self.m):
            for j, v in self.a.rows[i].items():
                if j >= t:
                    key = (abs(v), i, j)
                    if best is None or key < best:
                        best = key
        return best

    def _run(self):
        rows = self.a.rows
        for t in range(min(self.m, self.n)):
            best = self._pivot(t)
            if best is None:
                break
            self._row_swap(t, best[1])
            self._col_swap(t, best[2])
            while True:
                p = rows[t][t]
                dirty = False
                for i in range(t + 1, self.m):
                    v = rows[i].get(t)
                    if v:
                        self._row_add(i, t, -(v // p))
                        dirty = dirty or bool(rows[i].get(t))
                for j in sorted(k for k in rows[t] if k > t):
                    self._col_add(t, j, -(rows[t][j] // p))
                    dirty = dirty or bool(rows[t].get(j))
                if dirty:
                    cands = [(abs(rows[i][t]), 0, i) for i in range(t + 1, self.m) if rows[i].get(t)]
                    cands += [(abs(v), 1, j) for j, v in rows[t].items() if j > t]
                    _, axis, k = min(cands)
                    if axis == 0:
                        self._row_swap(t, k)
                    else:
                        self._col_swap(t, k)
                    continue
                bad = next((i for i in range(t + 1, self.m)
                            if any(j > t and v % p for j, v in rows[i].items())), None)
                if bad is None:
                    break
                self._row_add(t, bad, 1)
            if rows[t][t] < 0:
                self._row_negate(t)


class _ColumnEchelon:
    """Unimodular column reduction M·V = E with E in column echelon form."""

    def __init__(self, M: IntMatrix):
        self.source = M
        cols = [{i: v for i, v in enumerate(c) if v} for c in M.columns()]
        trans = [{j: 1} for j in range(M.cols)]
        active = list(range(M.cols))
        pivots = []
        for r in range(M.rows):
            hits = [c for c in active if cols[c].get(r)]
            while len(hits) > 1:
                p = min(hits, key=lambda c: (abs(cols[c][r]), c))
                pv = cols[p][r]
                survivors = [p]
                for c in hits:
                    if c == p:
                        continue
                    q = cols[c][r] // pv
                    _axpy(cols[c], cols[p], -q)
                    _axpy(trans[c], trans[p], -q)
                    if cols[c].get(r):
                        survivors.append(c)
                hits = survivors
            if hits:
                pivots.append((r, hits[0]))
                active.remove(hits[0])
        self._cols = cols
        self._trans = trans
        self.pivots = pivots
        self.free_columns = active

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self) -> IntMatrix:
        """Lattice basis of {x : M x = 0}, one column per basis vector."""
        n = self.source.cols
        return IntMatrix.from_columns(
            [[self._trans[c].get(i, 0) for i in range(n)] for c in self.free_columns], n)

    def basis(self) -> IntMatrix:
        """Lattice basis of the column span of M."""
        m = self.source.rows
        return IntMatrix.from_columns(
            [[self._cols[c].get(i, 0) for i in range(m)] for _, c in self.pivots], m)

    def solve(self, b: Sequence[int]) -> Optional[tuple]:
        residual = {i: v for i, v in enumerate(b) if v}
        y = {}
        for r, c in self.pivots:
            v = residual.get(r, 0)
            if v:
                pv = self._cols[c][r]
                if v % pv:
                    return None
                y[c] = v // pv
                _axpy(residual, self._cols[c], -y[c])
        if residual:
            return None
        x = {}
        for c, coef in y.items():
            _axpy(x, self._trans[c], coef)
        return tuple(x.get(i, 0) for i in range(self.source.cols))


def solve_integer(A: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """An integer solution of A x = b, or None."""
    if len(b) != A.rows:
        raise WorkbenchError("right-hand side length does not match the matrix")
    return _ColumnEchelon(A).solve(b)


def integer_nullspace(A: IntMatrix) -> IntMatrix:
    return _ColumnEchelon(A).nullspace()


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """U·M·V = D with U, V unimodular and d₁ | d₂ | … on the diagonal."""
    s = _Smith(M)
    return SmithForm(s.U.to_matrix(), s.a.to_matrix(), s.V.to_matrix(),
                     s.Ui.to_matrix(), s.Vi.to_matrix())


def invariant_factors(M: IntMatrix) -> tuple:
    return _Smith(M, track=False).diagonal


# ── Groups ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AbGroupInvariants:
    free_rank: int
    torsion: tuple = ()

    def as_list(self) -> list:
        """Torsion coefficients ascending, then one 0 per free summand."""
        return list(self.torsion) + [0] * self.free_rank

    @property
    def is_zero(self) -> bool:
        return not self.free_rank and not self.torsion

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        total = 1
        for d in self.torsion:
            total *= d
        return total

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


class _NormalForm:
    def __init__(self, relations: IntMatrix):
        s = _Smith(relations, track_cols=False)
        k = relations.rows
        moduli = [s.diagonal[i] if i < len(s.diagonal) else 0 for i in range(k)]
        self.U = s.U
        self.Ui = s.Ui
        self.moduli = moduli
        self.slots = [i for i, d in enumerate(moduli) if d != 1]

    def reduce(self, x: Sequence[int]) -> tuple:
        out = []
        for i in self.slots:
            y = sum(v * x[k] for k, v in self.U.rows[i].items())
            d = self.moduli[i]
            out.append(y % d if d else y)
        return tuple(out)

    def lift(self, coords: Sequence[int]) -> tuple:
        y = dict(zip(self.slots, coords))
        return tuple(sum(v * y[i] for i, v in row.items() if i in y) for row in self.Ui.rows)


@dataclass(frozen=True)
class PresentedAbGroup:
    generators: int
    relations: IntMatrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise WorkbenchError(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators")

    @cached_property
    def _normal(self) -> _NormalForm:
        return _NormalForm(self.relations)

    @cached_property
    def invariants(self) -> AbGroupInvariants:
        moduli = self._normal.moduli
        return AbGroupInvariants(sum(1 for d in moduli if d == 0),
                                 tuple(sorted(d for d in moduli if d > 1)))

    @property
    def order(self) -> Optional[int]:
        return self.invariants.order

    @property
    def is_zero(self) -> bool:
        return self.invariants.is_zero

    def canonical(self, x: Sequence[int]) -> tuple:
        """Canonical coordinates of an element; equal iff the elements are equal."""
        if len(x) != self.generators:
            raise WorkbenchError(f"element has {len(x)} coordinates, group has {self.generators}")
        return self._normal.reduce(x)

    def is_zero_element(self, x: Sequence[int]) -> bool:
        return not any(self.canonical(x))

    def elements(self, limit: int = 10_000) -> Iterator[tuple]:
        """Yield one representative per element of a finite group."""
        inv = self.invariants
        if inv.free_rank:
            raise WorkbenchError("cannot enumerate an infinite group")
        if inv.order > limit:
            raise WorkbenchError(f"group of order {inv.order} exceeds the enumeration limit {limit}")
        nf = self._normal
        ranges = [range(nf.moduli[i]) for i in nf.slots]
        for coords in product(*ranges):
            yield nf.lift(coords)

    def simplified(self) -> tuple:
        """(S, to_S, from_S): an isomorphic group in invariant-factor form with both isos."""
        nf = self._normal
        slots = nf.slots
        torsion = [nf.moduli[i] for i in slots if nf.moduli[i] > 1]
        relations = IntMatrix.diagonal(torsion, len(slots), len(torsion))
        simple = PresentedAbGroup(len(slots), relations, self.name)
        to_simple = IntMatrix.from_rows(
            ([nf.U.rows[i].get(k, 0) for k in range(self.generators)] for i in slots), self.generators)
        from_simple = IntMatrix.from_rows(
            ([row.get(i, 0) for i in slots] for row in nf.Ui.rows), len(slots))
        return simple, AbHom(self, simple, to_simple), AbHom(simple, self, from_simple)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"PresentedAbGroup({label}{self.invariants})"


def cyclic(n: int, name: str = "") -> PresentedAbGroup:
    """ℤ/n; cyclic(0) is ℤ."""
    rel = IntMatrix.from_rows([[n]], 1) if n else IntMatrix.zeros(1, 0)
    return PresentedAbGroup(1, rel, name)


def free(k: int, name: str = "") -> PresentedAbGroup:
    return PresentedAbGroup(k, IntMatrix.zeros(k, 0), name)


def trivial(name: str = "") -> PresentedAbGroup:
    return PresentedAbGroup(0, IntMatrix.zeros(0, 0), name)


def from_invariants(values: Sequence[int], name: str = "") -> PresentedAbGroup:
    """⊕ ℤ/d over the given list (0 for a free summand); d = 1 contributes nothing."""
    values = [abs(int(v)) for v in values if abs(int(v)) != 1]
    torsion = [d for d in values if d]
    order = [d for d in values if d] + [0] * (len(values) - len(torsion))
    return PresentedAbGroup(len(order), IntMatrix.diagonal(torsion, len(order), len(torsion)), name)


@dataclass(frozen=True)
class DirectSum:
    group: PresentedAbGroup
    injections: tuple
    projections: tuple


def direct_sum(groups: Sequence[PresentedAbGroup], name: str = "") -> DirectSum:
    total = PresentedAbGroup(sum(g.generators for g in groups),
                             IntMatrix.block_diagonal([g.relations for g in groups]), name)
    injections, projections = [], []
    offset = 0
    for g in groups:
        inj = IntMatrix.from_rows(
            ([int(r == offset + c) for c in range(g.generators)] for r in range(total.generators)),
            g.generators)
        injections.append(AbHom(g, total, inj))
        projections.append(AbHom(total, g, inj.transpose()))
        offset += g.generators
    return DirectSum(total, tuple(injections), tuple(projections))


# ── Homomorphisms ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AbHom:
    source: PresentedAbGroup
    target: PresentedAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.generators or self.matrix.cols != self.source.generators:
            raise IllTypedHom(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.generators}x{self.source.generators}")

    def __call__(self, x: Sequence[int]) -> tuple:
        return self.matrix.apply(x)

    def __matmul__(self, other: "AbHom") -> "AbHom":
        """self ∘ other"""
        if other.target != self.source:
            raise IllTypedHom("composition of homomorphisms with mismatched groups")
        return AbHom(other.source, self.target, self.matrix @ other.matrix)

    def _parallel(self, other: "AbHom") -> None:
        if self.source != other.source or self.target != other.target:
            raise NotParallel("homomorphisms do not share source and target")

    def __add__(self, other: "AbHom") -> "AbHom":
        self._parallel(other)
        return AbHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "AbHom") -> "AbHom":
        self._parallel(other)
        return AbHom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "AbHom":
        return AbHom(self.source, self.target, -self.matrix)


def identity_hom(G: PresentedAbGroup) -> AbHom:
    return AbHom(G, G, IntMatrix.identity(G.generators))


def zero_hom(G: PresentedAbGroup, H: PresentedAbGroup) -> AbHom:
    return AbHom(G, H, IntMatrix.zeros(H.generators, G.generators))


def is_zero_hom(h: AbHom) -> bool:
    return all(h.target.is_zero_element(col) for col in h.matrix.columns())


def homs_equal(h1: AbHom, h2: AbHom) -> bool:
    h1._parallel(h2)
    return is_zero_hom(h1 - h2)


def hom_is_well_defined(h: AbHom) -> bool:
    """Every source relator must map to zero in the target."""
    images = h.matrix @ h.source.relations
    return all(h.target.is_zero_element(col) for col in images.columns())


def _require_well_defined(h: AbHom) -> None:
    if not hom_is_well_defined(h):
        raise IllTypedHom("homomorphism does not respect the source relations")


def subgroup(G: PresentedAbGroup, generators: IntMatrix) -> tuple:
    """(S, inclusion) for the subgroup of G generated by the given columns."""
    basis = _ColumnEchelon(generators).basis() if generators.cols else generators
    m = basis.cols
    null = integer_nullspace(basis.hstack(-G.relations))
    raw = PresentedAbGroup(m, null.select_rows(range(m)))
    simple, _, from_simple = raw.simplified()
    return simple, AbHom(simple, G, basis @ from_simple.matrix)


def kernel(h: AbHom) -> tuple:
    """(K, inclusion K → source)."""
    _require_well_defined(h)
    null = integer_nullspace(h.matrix.hstack(-h.target.relations))
    return subgroup(h.source, null.select_rows(range(h.source.generators)))


def image(h: AbHom) -> tuple:
    """(I, inclusion I → target)."""
    _require_well_defined(h)
    return subgroup(h.target, h.matrix)


def cokernel(h: AbHom) -> tuple:
    """(Q, projection target → Q)."""
    _require_well_defined(h)
    raw = PresentedAbGroup(h.target.generators, h.target.relations.hstack(h.matrix))
    simple, to_simple, _ = raw.simplified()
    return simple, AbHom(h.target, simple, to_simple.matrix)


def equalizer(h1: AbHom, h2: AbHom) -> tuple:
    h1._parallel(h2)
    return kernel(h1 - h2)


def is_injective(h: AbHom) -> bool:
    return kernel(h)[0].is_zero


def is_surjective(h: AbHom) -> bool:
    return cokernel(h)[0].is_zero


def is_iso_hom(h: AbHom) -> bool:
    return is_injective(h) and is_surjective(h)


def lift_through(inclusion: AbHom, h: AbHom) -> Optional[AbHom]:
    """z with inclusion∘z = h, or None when h does not land in the image."""
    if inclusion.target != h.target:
        raise IllTypedHom("lift needs maps into the same group")
    G = h.target
    solver = _ColumnEchelon(inclusion.matrix.hstack(-G.relations))
    k = inclusion.source.generators
    columns = []
    for col in h.matrix.columns():
        sol = solver.solve(col)
        if sol is None:
            return None
        columns.append(sol[:k])
    return AbHom(h.source, inclusion.source, IntMatrix.from_columns(columns, k))


def is_short_exact(i: AbHom, p: AbHom) -> bool:
    """0 → A →i B →p C → 0 exact."""
    if i.target != p.source:
        raise IllTypedHom("maps of the sequence are not composable")
    if not is_zero_hom(p @ i) or not is_injective(i) or not is_surjective(p):
        return False
    _, kappa = kernel(p)
    return lift_through(i, kappa) is not None


def iso_test(G: PresentedAbGroup, H: PresentedAbGroup) -> tuple:
    """(isomorphic, witness G → H or None)."""
    if G.invariants != H.invariants:
        return False, None
    _, to_g, _ = G.simplified()
    _, _, from_h = H.simplified()
    return True, AbHom(G, H, from_h.matrix @ to_g.matrix)


# ── Complexes ─────────────────────────────────────────────────────────────────

def check_complex(maps: Sequence[AbHom]) -> None:
    for i in range(len(maps) - 1):
        if maps[i].target != maps[i + 1].source:
            raise NotAComplex(f"maps {i} and {i + 1} are not composable", (i,))
        if not is_zero_hom(maps[i + 1] @ maps[i]):
            raise NotAComplex(f"composite of maps {i} and {i + 1} is not zero", (i,))


def homology_at(maps: Sequence[AbHom], n: int, checked: bool = False) -> AbGroupInvariants:
    """ker(maps[n]) / im(maps[n-1]) where maps[i]: G_i → G_{i+1}."""
    if not maps:
        raise NotAComplex("a complex needs at least one map")
    if not 0 <= n <= len(maps):
        raise DegreeOutOfRange(f"degree {n} outside 0..{len(maps)}", (n,))
    if not checked:
        check_complex(maps)
    G = maps[n].source if n < len(maps) else maps[n - 1].target
    outgoing = maps[n] if n < len(maps) else zero_hom(G, trivial())
    incoming = maps[n - 1] if n > 0 else zero_hom(trivial(), G)
    K, inclusion = kernel(outgoing)
    lifter = _ColumnEchelon(inclusion.matrix.hstack(-G.relations))
    lifted = []
    for col in incoming.matrix.columns():
        sol = lifter.solve(col)
        if sol is None:
            raise NotAComplex(f"image at degree {n} is not inside the kernel", (n,))
        lifted.append(sol[:K.generators])
    quotient = PresentedAbGroup(
        K.generators, K.relations.hstack(IntMatrix.from_columns(lifted, K.generators)))
    return quotient.invariants


def chain_homology(outgoing: IntMatrix, incoming: IntMatrix, dim: int) -> AbGroupInvariants:
    """Homology of free chain groups at a degree of rank ``dim``: ker(outgoing)/im(incoming)."""
    out_rank = sum(1 for d in invariant_factors(outgoing) if d) if outgoing.cols else 0
    in_factors = invariant_factors(incoming) if incoming.cols else ()
    in_rank = sum(1 for d in in_factors if d)
    return AbGroupInvariants(dim - out_rank - in_rank, tuple(d for d in in_factors if d > 1))

