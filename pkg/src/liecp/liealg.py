"""Lie algebra data model, subspace calculus, constructors, and file format.

Structure constants are stored sparsely, one table per basis pair (i, j)
with i < j; antisymmetry is implicit.  Every constructor re-validates the
Jacobi identity on all basis triples, exactly.  Subspaces are kept in
reduced row echelon form so that subspace equality is tuple equality.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    AmbientMismatch,
    DuplicatePair,
    IndexOutOfRange,
    JacobiViolation,
    NoUnit,
    NotADerivation,
    NotAnIdeal,
    NotARepresentation,
    NotASubalgebra,
    NotCentral,
    NotCommutative,
    NotLeftSymmetric,
    ParseError,
    ZeroVector,
)
from .exactla import ONE, ZERO, QMatrix, VecLike, as_vector, format_rat, kernel, rref

Vector = tuple[Fraction, ...]
ScTable = Mapping[int, Fraction]


def _zero_vec(n: int) -> list[Fraction]:
    return [ZERO] * n


def _add_scaled(acc: list[Fraction], table: ScTable, coeff: Fraction) -> None:
    if not coeff:
        return
    for k, c in table.items():
        acc[k] += coeff * c


# ---------------------------------------------------------------------------
# Subspaces and functionals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n given by a reduced-echelon spanning matrix."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[VecLike]) -> Subspace:
        red, _ = rref(list(vectors), ambient_dim)
        return Subspace(ambient_dim, tuple(tuple(r) for r in red))

    @staticmethod
    def zero(ambient_dim: int) -> Subspace:
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> Subspace:
        return Subspace.span(ambient_dim, [_unit(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis)

    def residual(self, v: VecLike) -> Vector:
        """v minus its projection through the echelon rows (pivot elimination)."""
        w = list(as_vector(v))
        if len(w) != self.ambient_dim:
            raise AmbientMismatch("vector length must equal ambient_dim")
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                for j in range(self.ambient_dim):
                    w[j] -= c * row[j]
        return tuple(w)

    def contains(self, v: VecLike) -> bool:
        return all(x == 0 for x in self.residual(v))

    def coordinates_of(self, v: VecLike) -> Vector | None:
        """Coefficients c with v = sum c_i basis_i, or None if v is outside."""
        w = as_vector(v)
        coords = tuple(w[p] for p in self.pivots)
        rebuilt = _zero_vec(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            _add_scaled(rebuilt, dict(enumerate(row)), c)
        if tuple(rebuilt) != w:
            return None
        return coords

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(row) for row in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("ambient dimensions differ")
        return Subspace.span(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: Subspace) -> Subspace:
        """Intersection via the kernel of [P^T | -M^T]."""
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("ambient dimensions differ")
        p, m = self.dim, other.dim
        if p == 0 or m == 0:
            return Subspace.zero(self.ambient_dim)
        rows = []
        for coord in range(self.ambient_dim):
            rows.append([self.basis[i][coord] for i in range(p)] + [-other.basis[j][coord] for j in range(m)])
        vectors = []
        for sol in kernel(QMatrix.from_rows(rows, p + m)):
            v = _zero_vec(self.ambient_dim)
            for i in range(p):
                _add_scaled(v, dict(enumerate(self.basis[i])), sol[i])
            vectors.append(v)
        return Subspace.span(self.ambient_dim, vectors)


def _unit(n: int, i: int) -> list[Fraction]:
    v = _zero_vec(n)
    v[i] = ONE
    return v


@dataclass(frozen=True)
class Functional:
    """Element of the dual space, as its values on the basis."""

    ambient_dim: int
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.ambient_dim:
            raise AmbientMismatch("coords length must equal ambient_dim")

    @staticmethod
    def from_coords(coords: VecLike) -> Functional:
        v = as_vector(coords)
        return Functional(len(v), v)

    def __call__(self, v: VecLike) -> Fraction:
        vv = as_vector(v)
        if len(vv) != self.ambient_dim:
            raise AmbientMismatch("vector length must equal ambient_dim")
        return sum((a * b for a, b in zip(self.coords, vv)), ZERO)


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    labels: tuple[str, ...]
    sc: Mapping[tuple[int, int], ScTable]

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise IndexOutOfRange(f"unknown basis label {label!r}") from None

    def bracket_table(self, i: int, j: int) -> dict[int, Fraction]:
        """Table of [x_i, x_j] for basis indices, sign handled."""
        if i == j:
            return {}
        if i < j:
            return dict(self.sc.get((i, j), {}))
        return {k: -c for k, c in self.sc.get((j, i), {}).items()}

    def bracket(self, u: VecLike, v: VecLike) -> Vector:
        uu, vv = as_vector(u), as_vector(v)
        if len(uu) != self.dim or len(vv) != self.dim:
            raise AmbientMismatch("vectors must have length dim")
        acc = _zero_vec(self.dim)
        for (i, j), table in self.sc.items():
            coeff = uu[i] * vv[j] - uu[j] * vv[i]
            _add_scaled(acc, table, coeff)
        return tuple(acc)

    def basis_vector(self, i: int) -> Vector:
        return tuple(_unit(self.dim, i))

    def ad(self, v: VecLike) -> QMatrix:
        """Matrix of w -> [v, w] in the basis (columns are [v, x_j])."""
        cols = [self.bracket(v, self.basis_vector(j)) for j in range(self.dim)]
        return QMatrix(self.dim, self.dim, tuple(tuple(col[k] for col in cols) for k in range(self.dim)))

    def subspace(self, vectors: Iterable[VecLike]) -> Subspace:
        return Subspace.span(self.dim, vectors)

    def span_of_labels(self, labels: Iterable[str]) -> Subspace:
        return self.subspace([self.basis_vector(self.label_index(lb)) for lb in labels])


def _jacobi_defect(sc: Mapping[tuple[int, int], ScTable], dim: int, i: int, j: int, k: int) -> Vector:
    def table(a: int, b: int) -> dict[int, Fraction]:
        if a == b:
            return {}
        if a < b:
            return dict(sc.get((a, b), {}))
        return {t: -c for t, c in sc.get((b, a), {}).items()}

    acc = _zero_vec(dim)
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        inner = table(a, b)
        for p, coeff in inner.items():
            _add_scaled(acc, table(p, c), coeff)
    return tuple(acc)


def new_lie_algebra(
    dim: int,
    labels: Sequence[str],
    brackets: Mapping[tuple[int, int], Mapping[int, "Fraction | int"]],
) -> LieAlgebra:
    """Validated constructor: distinct labels, i < j keys, exact Jacobi check."""
    labels = tuple(labels)
    if len(labels) != dim:
        raise ValueError("label count must equal dim")
    if len(set(labels)) != dim:
        raise ValueError("labels must be distinct")
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), table in brackets.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise IndexOutOfRange(f"bracket pair ({i}, {j}) out of range")
        if i >= j:
            raise DuplicatePair(f"bracket keys must have i < j, got ({i}, {j})")
        if (i, j) in sc:
            raise DuplicatePair(f"duplicate bracket pair ({i}, {j})")
        clean = {}
        for k, c in table.items():
            if not (0 <= k < dim):
                raise IndexOutOfRange(f"bracket target {k} out of range in pair ({i}, {j})")
            c = Fraction(c)
            if c:
                clean[k] = c
        if clean:
            sc[(i, j)] = clean
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                defect = _jacobi_defect(sc, dim, i, j, k)
                if any(x != 0 for x in defect):
                    raise JacobiViolation((i, j, k), defect, labels)
    return LieAlgebra(dim, labels, sc)


def lie_algebra_from_label_table(
    labels: Sequence[str],
    table: Mapping[tuple[str, str], Mapping[str, "Fraction | int"]],
) -> LieAlgebra:
    """Convenience constructor with label-keyed brackets (lhs before rhs)."""
    idx = {lb: i for i, lb in enumerate(labels)}
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (lhs, rhs), terms in table.items():
        i, j = idx[lhs], idx[rhs]
        if i >= j:
            raise DuplicatePair(f"bracket ({lhs}, {rhs}) must list the earlier basis label first")
        brackets[(i, j)] = {idx[t]: Fraction(c) for t, c in terms.items()}
    return new_lie_algebra(len(labels), labels, brackets)


# ---------------------------------------------------------------------------
# Structural subspaces
# ---------------------------------------------------------------------------


def center(L: LieAlgebra) -> Subspace:
    """{z : [z, x_j] = 0 for all j}, via the stacked adjoint constraints."""
    rows: dict[tuple[int, int], list[Fraction]] = {}

    def row(j: int, k: int) -> list[Fraction]:
        return rows.setdefault((j, k), _zero_vec(L.dim))

    for (i, j), table in L.sc.items():
        for k, c in table.items():
            row(j, k)[i] += c
            row(i, k)[j] -= c
    if not rows:
        return Subspace.full(L.dim)
    m = QMatrix.from_rows([rows[key] for key in sorted(rows)], L.dim)
    return Subspace(L.dim, tuple(kernel(m)))


def derived_subalgebra(L: LieAlgebra) -> Subspace:
    vectors = []
    for table in L.sc.values():
        v = _zero_vec(L.dim)
        _add_scaled(v, table, ONE)
        vectors.append(v)
    return Subspace.span(L.dim, vectors)


def centralizer(L: LieAlgebra, u: VecLike) -> Subspace:
    """Kernel of v -> [v, u]."""
    uu = as_vector(u)
    cols = [L.bracket(L.basis_vector(i), uu) for i in range(L.dim)]
    m = QMatrix(L.dim, L.dim, tuple(tuple(col[k] for col in cols) for k in range(L.dim)))
    return Subspace(L.dim, tuple(kernel(m)))


def is_abelian(L: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(L, s)
    rows = s.basis
    return all(
        all(x == 0 for x in L.bracket(rows[a], rows[b]))
        for a in range(len(rows))
        for b in range(a + 1, len(rows))
    )


def is_subalgebra(L: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(L, s)
    rows = s.basis
    return all(
        s.contains(L.bracket(rows[a], rows[b]))
        for a in range(len(rows))
        for b in range(a + 1, len(rows))
    )


def is_ideal(L: LieAlgebra, s: Subspace) -> bool:
    _check_ambient(L, s)
    return all(
        s.contains(L.bracket(L.basis_vector(i), row)) for i in range(L.dim) for row in s.basis
    )


def _check_ambient(L: LieAlgebra, s: Subspace) -> None:
    if s.ambient_dim != L.dim:
        raise AmbientMismatch("subspace ambient dimension differs from the algebra")


# ---------------------------------------------------------------------------
# Quotients and restrictions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Projection L -> L/A along the ideal's pivot coordinates."""

    ideal: Subspace
    complement: tuple[int, ...]

    def project_vector(self, v: VecLike) -> Vector:
        reduced = self.ideal.residual(v)
        return tuple(reduced[c] for c in self.complement)

    def project_subspace(self, s: Subspace) -> Subspace:
        return Subspace.span(len(self.complement), [self.project_vector(row) for row in s.basis])

    def push_functional(self, f: Functional) -> Functional:
        """Induced functional on the quotient; requires f to vanish on the ideal."""
        if any(f(row) != 0 for row in self.ideal.basis):
            raise ValueError("functional does not vanish on the ideal")
        n = self.ideal.ambient_dim
        coords = tuple(f(tuple(_unit(n, c))) for c in self.complement)
        return Functional(len(self.complement), coords)

    def lift_vector(self, v: VecLike) -> Vector:
        vv = as_vector(v)
        n = self.ideal.ambient_dim
        out = _zero_vec(n)
        for c, x in zip(self.complement, vv):
            out[c] = x
        return tuple(out)


def quotient(L: LieAlgebra, a: Subspace) -> tuple[LieAlgebra, QuotientMap]:
    """Quotient by an ideal, on the non-pivot coordinates of its echelon basis."""
    if not is_ideal(L, a):
        raise NotAnIdeal("quotient requires an ideal")
    pivot_set = set(a.pivots)
    complement = tuple(c for c in range(L.dim) if c not in pivot_set)
    qmap = QuotientMap(a, complement)
    labels = tuple(L.labels[c] for c in complement)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for ai in range(len(complement)):
        for bj in range(ai + 1, len(complement)):
            w = L.bracket(L.basis_vector(complement[ai]), L.basis_vector(complement[bj]))
            img = qmap.project_vector(w)
            table = {k: c for k, c in enumerate(img) if c}
            if table:
                brackets[(ai, bj)] = table
    return new_lie_algebra(len(complement), labels, brackets), qmap


def restrict(L: LieAlgebra, s: Subspace, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Standalone algebra on a subalgebra's echelon basis (pivot labels)."""
    if not is_subalgebra(L, s):
        raise NotASubalgebra("restriction requires a subalgebra")
    if labels is None:
        labels = tuple(L.labels[p] for p in s.pivots)
    rows = s.basis
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            w = L.bracket(rows[a], rows[b])
            coords = s.coordinates_of(w)
            assert coords is not None
            table = {k: c for k, c in enumerate(coords) if c}
            if table:
                brackets[(a, b)] = table
    return new_lie_algebra(len(rows), tuple(labels), brackets)


def restrict_functional(f: Functional, s: Subspace) -> Functional:
    """f restricted to a subspace, in the echelon-basis coordinates."""
    return Functional(s.dim, tuple(f(row) for row in s.basis))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def direct_product(l1: LieAlgebra, l2: LieAlgebra) -> LieAlgebra:
    """Block structure constants, no cross brackets; labels suffixed on collision."""
    if set(l1.labels) & set(l2.labels):
        labels = tuple(f"{lb}~1" for lb in l1.labels) + tuple(f"{lb}~2" for lb in l2.labels)
    else:
        labels = l1.labels + l2.labels
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), table in l1.sc.items():
        brackets[(i, j)] = dict(table)
    off = l1.dim
    for (i, j), table in l2.sc.items():
        brackets[(i + off, j + off)] = {k + off: c for k, c in table.items()}
    return new_lie_algebra(l1.dim + l2.dim, labels, brackets)


def _as_matrix(m, size: int) -> QMatrix:
    if isinstance(m, QMatrix):
        if m.rows != size or m.cols != size:
            raise ValueError("action matrix has the wrong shape")
        return m
    return QMatrix.from_rows([as_vector(row) for row in m], size)


def semidirect_product(
    g: LieAlgebra,
    action: Sequence,
    dim_v: int,
    v_labels: Sequence[str] | None = None,
) -> LieAlgebra:
    """g acting on an abelian ideal V through the given matrices.

    action[i] is the matrix of x_i on V; the list must be a Lie algebra
    homomorphism, checked exactly on basis pairs.
    """
    mats = [_as_matrix(m, dim_v) for m in action]
    if len(mats) != g.dim:
        raise ValueError("one action matrix per basis element of g is required")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            commutator = mats[i].matmul(mats[j]).entries
            reverse = mats[j].matmul(mats[i]).entries
            expected = [[commutator[a][b] - reverse[a][b] for b in range(dim_v)] for a in range(dim_v)]
            acc = [[ZERO] * dim_v for _ in range(dim_v)]
            for k, c in g.bracket_table(i, j).items():
                for a in range(dim_v):
                    for b in range(dim_v):
                        acc[a][b] += c * mats[k].entries[a][b]
            if acc != expected:
                raise NotARepresentation(f"action fails on basis pair ({g.labels[i]}, {g.labels[j]})")
    if v_labels is None:
        v_labels = tuple(f"v{j + 1}" for j in range(dim_v))
    v_labels = tuple(v_labels)
    if set(v_labels) & set(g.labels):
        raise ValueError("module labels collide with algebra labels")
    labels = g.labels + v_labels
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), table in g.sc.items():
        brackets[(i, j)] = dict(table)
    for i in range(g.dim):
        for j in range(dim_v):
            table = {g.dim + k: mats[i].entries[k][j] for k in range(dim_v) if mats[i].entries[k][j]}
            if table:
                brackets[(i, g.dim + j)] = table
    return new_lie_algebra(g.dim + dim_v, labels, brackets)


def derivation_extend(m: LieAlgebra, d, new_label: str = "d") -> LieAlgebra:
    """Extension by one outer element acting as the given derivation."""
    dm = _as_matrix(d, m.dim)
    for (i, j), table in m.sc.items():
        lhs = _zero_vec(m.dim)
        _add_scaled(lhs, table, ONE)
        lhs = dm.mul_vector(lhs)
        di = tuple(dm.entries[k][i] for k in range(m.dim))
        dj = tuple(dm.entries[k][j] for k in range(m.dim))
        rhs = tuple(
            a + b for a, b in zip(m.bracket(di, m.basis_vector(j)), m.bracket(m.basis_vector(i), dj))
        )
        if tuple(lhs) != rhs:
            raise NotADerivation(f"derivation identity fails on ({m.labels[i]}, {m.labels[j]})")
    # Also cover pairs with zero bracket: d[x,y] = 0 must match [dx,y] + [x,dy].
    for i in range(m.dim):
        for j in range(i + 1, m.dim):
            if (i, j) in m.sc:
                continue
            di = tuple(dm.entries[k][i] for k in range(m.dim))
            dj = tuple(dm.entries[k][j] for k in range(m.dim))
            rhs = tuple(
                a + b for a, b in zip(m.bracket(di, m.basis_vector(j)), m.bracket(m.basis_vector(i), dj))
            )
            if any(x != 0 for x in rhs):
                raise NotADerivation(f"derivation identity fails on ({m.labels[i]}, {m.labels[j]})")
    if new_label in m.labels:
        raise ValueError("new label collides with an existing basis label")
    labels = m.labels + (new_label,)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), table in m.sc.items():
        brackets[(i, j)] = dict(table)
    for i in range(m.dim):
        table = {k: dm.entries[k][i] for k in range(m.dim) if dm.entries[k][i]}
        if table:
            # stored as [x_i, d] = -d(x_i) to keep i < j ordering
            brackets[(i, m.dim)] = {k: -c for k, c in table.items()}
    return new_lie_algebra(m.dim + 1, labels, brackets)


def heisenberg_extend(m: LieAlgebra, z: VecLike, r: int) -> LieAlgebra:
    """Adjoin a symplectic plane pair basis s_1..s_r, t_1..t_r with [s_i, t_j] = delta_ij z."""
    zv = as_vector(z)
    if all(x == 0 for x in zv):
        raise ZeroVector("z must be nonzero")
    if not center(m).contains(zv):
        raise NotCentral("z must be central in M")
    if r < 1:
        raise ValueError("r must be >= 1")
    s_labels = tuple(f"s{i + 1}" for i in range(r))
    t_labels = tuple(f"t{i + 1}" for i in range(r))
    if (set(s_labels) | set(t_labels)) & set(m.labels):
        raise ValueError("adjoined labels collide with existing basis labels")
    labels = m.labels + s_labels + t_labels
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), table in m.sc.items():
        brackets[(i, j)] = dict(table)
    z_table = {k: c for k, c in enumerate(zv) if c}
    for i in range(r):
        brackets[(m.dim + i, m.dim + r + i)] = dict(z_table)
    return new_lie_algebra(m.dim + 2 * r, labels, brackets)


# ---------------------------------------------------------------------------
# Associative and left-symmetric algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AssocAlgebra:
    dim: int
    labels: tuple[str, ...]
    sc: Mapping[tuple[int, int], ScTable]
    unit: Vector | None

    def product_table(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self.sc.get((i, j), {}))

    def product(self, u: VecLike, v: VecLike) -> Vector:
        uu, vv = as_vector(u), as_vector(v)
        acc = _zero_vec(self.dim)
        for (i, j), table in self.sc.items():
            _add_scaled(acc, table, uu[i] * vv[j])
        return tuple(acc)

    def basis_vector(self, i: int) -> Vector:
        return tuple(_unit(self.dim, i))


@dataclass(frozen=True)
class LSAAlgebra:
    dim: int
    labels: tuple[str, ...]
    sc: Mapping[tuple[int, int], ScTable]

    def product(self, u: VecLike, v: VecLike) -> Vector:
        uu, vv = as_vector(u), as_vector(v)
        acc = _zero_vec(self.dim)
        for (i, j), table in self.sc.items():
            _add_scaled(acc, table, uu[i] * vv[j])
        return tuple(acc)

    def basis_vector(self, i: int) -> Vector:
        return tuple(_unit(self.dim, i))


def _clean_product_table(
    dim: int, products: Mapping[tuple[int, int], Mapping[int, "Fraction | int"]]
) -> dict[tuple[int, int], dict[int, Fraction]]:
    sc: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), table in products.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise IndexOutOfRange(f"product pair ({i}, {j}) out of range")
        if (i, j) in sc:
            raise DuplicatePair(f"duplicate product pair ({i}, {j})")
        clean = {}
        for k, c in table.items():
            if not (0 <= k < dim):
                raise IndexOutOfRange(f"product target {k} out of range")
            c = Fraction(c)
            if c:
                clean[k] = c
        if clean:
            sc[(i, j)] = clean
    return sc


def new_assoc_algebra(
    dim: int,
    labels: Sequence[str],
    products: Mapping[tuple[int, int], Mapping[int, "Fraction | int"]],
    unit: VecLike | None = None,
) -> AssocAlgebra:
    labels = tuple(labels)
    if len(labels) != dim or len(set(labels)) != dim:
        raise ValueError("labels must be distinct and match dim")
    sc = _clean_product_table(dim, products)
    alg = AssocAlgebra(dim, labels, sc, as_vector(unit) if unit is not None else None)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                left = alg.product(alg.product(alg.basis_vector(i), alg.basis_vector(j)), alg.basis_vector(k))
                right = alg.product(alg.basis_vector(i), alg.product(alg.basis_vector(j), alg.basis_vector(k)))
                if left != right:
                    raise ValueError(f"associativity fails on basis triple ({i}, {j}, {k})")
    if alg.unit is not None:
        for i in range(dim):
            e = alg.basis_vector(i)
            if alg.product(alg.unit, e) != e or alg.product(e, alg.unit) != e:
                raise NoUnit("declared unit is not a two-sided identity")
    return alg


def new_lsa_algebra(
    dim: int,
    labels: Sequence[str],
    products: Mapping[tuple[int, int], Mapping[int, "Fraction | int"]],
) -> LSAAlgebra:
    labels = tuple(labels)
    if len(labels) != dim or len(set(labels)) != dim:
        raise ValueError("labels must be distinct and match dim")
    sc = _clean_product_table(dim, products)
    alg = LSAAlgebra(dim, labels, sc)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                a, b, c = alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k)
                lhs = _vec_sub(alg.product(a, alg.product(b, c)), alg.product(alg.product(a, b), c))
                rhs = _vec_sub(alg.product(b, alg.product(a, c)), alg.product(alg.product(b, a), c))
                if lhs != rhs:
                    raise NotLeftSymmetric(f"left-symmetric identity fails on triple ({i}, {j}, {k})")
    return alg


def _vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def lie_of_associative(a: AssocAlgebra) -> LieAlgebra:
    """Commutator Lie algebra [u, v] = uv - vu."""
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            w = _vec_sub(a.product(a.basis_vector(i), a.basis_vector(j)), a.product(a.basis_vector(j), a.basis_vector(i)))
            table = {k: c for k, c in enumerate(w) if c}
            if table:
                brackets[(i, j)] = table
    return new_lie_algebra(a.dim, a.labels, brackets)


def left_mult_action(a: "AssocAlgebra | LSAAlgebra") -> list[QMatrix]:
    """Matrices of u -> (v -> uv), one per basis element."""
    mats = []
    for i in range(a.dim):
        cols = [a.product(a.basis_vector(i), a.basis_vector(j)) for j in range(a.dim)]
        mats.append(QMatrix(a.dim, a.dim, tuple(tuple(col[k] for col in cols) for k in range(a.dim))))
    return mats


def lie_of_lsa(a: LSAAlgebra) -> tuple[LieAlgebra, list[QMatrix]]:
    """Commutator algebra of a left-symmetric product and its left-multiplication module."""
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            w = _vec_sub(a.product(a.basis_vector(i), a.basis_vector(j)), a.product(a.basis_vector(j), a.basis_vector(i)))
            table = {k: c for k, c in enumerate(w) if c}
            if table:
                brackets[(i, j)] = table
    return new_lie_algebra(a.dim, a.labels, brackets), left_mult_action(a)


def tensor_commutative(a: AssocAlgebra, m: LieAlgebra) -> LieAlgebra:
    """Current-algebra bracket [a x, a' y] = (a a') [x, y] for commutative a."""
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if a.product(a.basis_vector(i), a.basis_vector(j)) != a.product(a.basis_vector(j), a.basis_vector(i)):
                raise NotCommutative(f"product is not commutative on ({a.labels[i]}, {a.labels[j]})")
    dim = a.dim * m.dim

    def flat(i: int, j: int) -> int:
        return i * m.dim + j

    labels = tuple(f"{a.labels[i]}*{m.labels[j]}" for i in range(a.dim) for j in range(m.dim))
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(a.dim):
        for k in range(a.dim):
            prod = a.product_table(i, k)
            if i > k:
                continue
            for j in range(m.dim):
                for l in range(m.dim):
                    u, v = flat(i, j), flat(k, l)
                    if u >= v:
                        continue
                    table: dict[int, Fraction] = {}
                    for p, pc in prod.items():
                        for q, qc in m.bracket_table(j, l).items():
                            t = flat(p, q)
                            val = table.get(t, ZERO) + pc * qc
                            if val:
                                table[t] = val
                            else:
                                table.pop(t, None)
                    if table:
                        brackets[(u, v)] = table
    return new_lie_algebra(dim, labels, brackets)


# ---------------------------------------------------------------------------
# Algebra file format (strict, structured JSON text)
# ---------------------------------------------------------------------------

_RAT_RE = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")
_LABEL_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.~'*+-]*$")


def _parse_rat(text: str, location: str) -> Fraction:
    if not isinstance(text, str) or not _RAT_RE.match(text):
        raise ParseError(f"malformed rational {text!r}", location)
    return Fraction(text)


def _parse_header(obj, kind_field: str) -> tuple[str, int, tuple[str, ...]]:
    if not isinstance(obj, dict):
        raise ParseError("top-level value must be an object")
    name = obj.get("name")
    if not isinstance(name, str):
        raise ParseError("field 'name' must be a string", "name")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("field 'dim' must be a nonnegative integer", "dim")
    basis = obj.get("basis")
    if not isinstance(basis, list) or len(basis) != dim:
        raise ParseError("field 'basis' must be an array of dim labels", "basis")
    for idx, lb in enumerate(basis):
        if not isinstance(lb, str) or not _LABEL_RE.match(lb):
            raise ParseError(f"bad basis label {lb!r}", f"basis[{idx}]")
    if len(set(basis)) != dim:
        raise ParseError("basis labels must be distinct", "basis")
    if kind_field not in obj:
        raise ParseError(f"missing field '{kind_field}'", kind_field)
    return name, dim, tuple(basis)


def _parse_terms(terms, idx_of: Mapping[str, int], location: str) -> dict[int, Fraction]:
    if not isinstance(terms, dict):
        raise ParseError("'terms' must be a map label -> rational string", location)
    out = {}
    for lb, val in terms.items():
        if lb not in idx_of:
            raise ParseError(f"unknown label {lb!r}", location)
        out[idx_of[lb]] = _parse_rat(val, f"{location}.{lb}")
    return out


def parse_algebra(text: str) -> LieAlgebra:
    """Parse the strict Lie-algebra file format; see serialize_algebra."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    _, dim, basis = _parse_header(obj, "brackets")
    idx_of = {lb: i for i, lb in enumerate(basis)}
    entries = obj["brackets"]
    if not isinstance(entries, list):
        raise ParseError("field 'brackets' must be an array", "brackets")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pos, item in enumerate(entries):
        location = f"brackets[{pos}]"
        if not isinstance(item, dict) or set(item) != {"lhs", "rhs", "terms"}:
            raise ParseError("bracket entries need exactly lhs/rhs/terms", location)
        lhs, rhs = item["lhs"], item["rhs"]
        for side in (lhs, rhs):
            if side not in idx_of:
                raise ParseError(f"unknown label {side!r}", location)
        i, j = idx_of[lhs], idx_of[rhs]
        if i >= j:
            raise ParseError(f"pair ({lhs}, {rhs}) must list the earlier basis label first", location)
        if (i, j) in brackets:
            raise ParseError(f"duplicate pair ({lhs}, {rhs})", location)
        brackets[(i, j)] = _parse_terms(item["terms"], idx_of, location)
    return new_lie_algebra(dim, basis, brackets)


def serialize_algebra(L: LieAlgebra, name: str = "algebra") -> str:
    """Canonical text form; parse(serialize(L)) == L."""
    items = []
    for (i, j) in sorted(L.sc):
        terms = {L.labels[k]: format_rat(c) for k, c in sorted(L.sc[(i, j)].items())}
        items.append({"lhs": L.labels[i], "rhs": L.labels[j], "terms": terms})
    obj = {"name": name, "dim": L.dim, "basis": list(L.labels), "brackets": items}
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _parse_product_file(text: str) -> tuple[int, tuple[str, ...], dict, Vector | None]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    _, dim, basis = _parse_header(obj, "product")
    idx_of = {lb: i for i, lb in enumerate(basis)}
    entries = obj["product"]
    if not isinstance(entries, list):
        raise ParseError("field 'product' must be an array", "product")
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pos, item in enumerate(entries):
        location = f"product[{pos}]"
        if not isinstance(item, dict) or set(item) != {"lhs", "rhs", "terms"}:
            raise ParseError("product entries need exactly lhs/rhs/terms", location)
        lhs, rhs = item["lhs"], item["rhs"]
        for side in (lhs, rhs):
            if side not in idx_of:
                raise ParseError(f"unknown label {side!r}", location)
        key = (idx_of[lhs], idx_of[rhs])
        if key in products:
            raise ParseError(f"duplicate pair ({lhs}, {rhs})", location)
        products[key] = _parse_terms(item["terms"], idx_of, location)
    unit = None
    if "unit" in obj:
        table = _parse_terms(obj["unit"], idx_of, "unit")
        unit_vec = _zero_vec(dim)
        for k, c in table.items():
            unit_vec[k] = c
        unit = tuple(unit_vec)
    return dim, basis, products, unit


def parse_assoc_algebra(text: str) -> AssocAlgebra:
    dim, basis, products, unit = _parse_product_file(text)
    return new_assoc_algebra(dim, basis, products, unit)


def parse_lsa_algebra(text: str) -> LSAAlgebra:
    dim, basis, products, _ = _parse_product_file(text)
    return new_lsa_algebra(dim, basis, products)


def serialize_product_algebra(a: "AssocAlgebra | LSAAlgebra", name: str = "algebra") -> str:
    items = []
    for (i, j) in sorted(a.sc):
        terms = {a.labels[k]: format_rat(c) for k, c in sorted(a.sc[(i, j)].items())}
        items.append({"lhs": a.labels[i], "rhs": a.labels[j], "terms": terms})
    obj: dict = {"name": name, "dim": a.dim, "basis": list(a.labels), "product": items}
    unit = getattr(a, "unit", None)
    if unit is not None:
        obj["unit"] = {a.labels[k]: format_rat(c) for k, c in enumerate(unit) if c}
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# Span expressions ("a", "a-b", "1/2*c", ...)
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_][A-Za-z0-9_.~']*)\s*")


def parse_vector_expr(L: LieAlgebra, expr: str) -> Vector:
    """Rational combination of basis labels, e.g. "a-b" or "x+1/2*y"."""
    pos = 0
    acc = _zero_vec(L.dim)
    seen = False
    while pos < len(expr):
        m = _TERM_RE.match(expr, pos)
        if not m or m.start() != pos:
            raise ParseError(f"cannot parse span expression {expr!r}", f"offset {pos}")
        sign, coeff, label = m.groups()
        if seen and sign is None:
            raise ParseError(f"missing +/- between terms in {expr!r}", f"offset {pos}")
        value = Fraction(coeff) if coeff else ONE
        if sign == "-":
            value = -value
        acc[L.label_index(label)] += value
        pos = m.end()
        seen = True
    if not seen:
        raise ParseError(f"empty span expression {expr!r}")
    return tuple(acc)


def parse_span(L: LieAlgebra, spec: "str | Iterable[str]") -> Subspace:
    """Comma-separated span expressions -> subspace."""
    parts = [p for p in spec.split(",")] if isinstance(spec, str) else list(spec)
    vectors = [parse_vector_expr(L, p) for p in parts if p.strip()]
    return Subspace.span(L.dim, vectors)
