"""Nilradicals of parabolic subalgebras in matrix form, types A and C.

Conventions.  Type A lives inside sl_n: a composition (p_1, ..., p_m) of n
cuts the coordinates into consecutive blocks, and the nilradical N is the
span of the elementary matrices E_ij whose row block precedes the column
block.  Type C lives inside sp_2r with respect to a Witt basis
e_1, ..., e_r, e_-r, ..., e_-1 pairing e_i with e_-i; block sizes are
palindromic and N is the strictly-block-upper part.  Its basis splits into
  Xm i j  <->  E_ij - E_-j,-i           (i < j <= r)
  Xp i j  <->  E_i,-j + E_j,-i          (i < j <= r)
  Xp i i  <->  E_i,-i
with membership decided by block positions.  Types B and D (odd/even
orthogonal, anti-diagonal symmetric form) are realized only for Borel
data; their nilradicals carry no polarization construction here.

The distinguished abelian ideal in type A is the full off-diagonal block
cut at the prefix sum p closest to n/2; in type C it is the span of all
Xp i j with i <= r - r1.  The distinguished functional is supported on the
anti-diagonal of that block (type A) or on the Xp i i vectors (type C).
When the type-A cut lands above n/2 the same ideal works but the
functional must be supported on the first n - p anti-diagonal positions;
this is the image of the standard construction under the anti-transpose
isomorphism with the reversed composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidComposition, UnsupportedType
from .exactla import DEFAULT_POLICY, ONE, ZERO, QMatrix, RankPolicy, kernel
from .cp import CPReport, is_cp, perp_of
from .index import index, stabilizer
from .liealg import (
    Functional,
    LieAlgebra,
    Subspace,
    is_abelian,
    is_ideal,
    new_lie_algebra,
)

SparseMat = dict[tuple[int, int], Fraction]


# ---------------------------------------------------------------------------
# Compositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositionA:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise InvalidComposition("parts must be positive")
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        out = []
        total = 0
        for p in self.parts:
            total += p
            out.append(total)
        return tuple(out)

    def block_of(self, pos: int) -> int:
        """1-based block index of a 1-based coordinate."""
        for b, s in enumerate(self.prefix_sums, start=1):
            if pos <= s:
                return b
        raise IndexError(pos)

    def split_point(self) -> int:
        """Prefix sum closest to n/2, ties toward the smaller value."""
        return min(self.prefix_sums, key=lambda s: (abs(2 * s - self.n), s))


@dataclass(frozen=True)
class CompositionC:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(p < 1 for p in parts):
            raise InvalidComposition("parts must be positive")
        if parts != tuple(reversed(parts)):
            raise InvalidComposition("parts must be palindromic")
        if sum(parts) % 2:
            raise InvalidComposition("parts must sum to an even number")
        if len(parts) % 2 and parts[len(parts) // 2] % 2:
            raise InvalidComposition("an odd number of parts needs an even middle part")

    @staticmethod
    def from_half(half: Sequence[int], r1: int = 0) -> CompositionC:
        half = tuple(int(p) for p in half)
        middle = (2 * r1,) if r1 else ()
        return CompositionC(half + middle + tuple(reversed(half)))

    @property
    def r(self) -> int:
        return sum(self.parts) // 2

    @property
    def ell(self) -> int:
        return len(self.parts) // 2

    @property
    def r1(self) -> int:
        return self.parts[self.ell] // 2 if len(self.parts) % 2 else 0

    def block_of(self, pos: int) -> int:
        total = 0
        for b, p in enumerate(self.parts, start=1):
            total += p
            if pos <= total:
                return b
        raise IndexError(pos)


# ---------------------------------------------------------------------------
# Sparse matrix helpers
# ---------------------------------------------------------------------------


def _e(a: int, b: int, c: Fraction = ONE) -> SparseMat:
    return {(a, b): c}


def _mat_add(m1: SparseMat, m2: SparseMat) -> SparseMat:
    out = dict(m1)
    for pos, v in m2.items():
        w = out.get(pos, ZERO) + v
        if w:
            out[pos] = w
        else:
            out.pop(pos, None)
    return out


def _mat_scale(m: SparseMat, c: Fraction) -> SparseMat:
    return {pos: c * v for pos, v in m.items()} if c else {}


def _mat_commutator(m1: SparseMat, m2: SparseMat) -> SparseMat:
    out: SparseMat = {}
    for (a1, b1), v1 in m1.items():
        for (a2, b2), v2 in m2.items():
            if b1 == a2:
                w = out.get((a1, b2), ZERO) + v1 * v2
                if w:
                    out[(a1, b2)] = w
                else:
                    out.pop((a1, b2), None)
            if b2 == a1:
                w = out.get((a2, b1), ZERO) - v1 * v2
                if w:
                    out[(a2, b1)] = w
                else:
                    out.pop((a2, b1), None)
    return out


def _algebra_from_matrices(
    labels: Sequence[str], mats: Sequence[SparseMat], leads: Sequence[tuple[int, int]]
) -> LieAlgebra:
    """Structure constants read off commutators at each basis vector's lead
    position, with an exact reconstruction check."""
    dim = len(mats)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            c = _mat_commutator(mats[i], mats[j])
            table: dict[int, Fraction] = {}
            for k, lead in enumerate(leads):
                v = c.get(lead, ZERO)
                if v:
                    table[k] = v / mats[k][lead]
            recon: SparseMat = {}
            for k, v in table.items():
                recon = _mat_add(recon, _mat_scale(mats[k], v))
            if recon != c:
                raise ArithmeticError("commutator escapes the spanned set of matrices")
            if table:
                brackets[(i, j)] = table
    return new_lie_algebra(dim, tuple(labels), brackets)


def _pos_label(prefix: str, i: int, j: int, wide: bool) -> str:
    return f"{prefix}{i}_{j}" if wide else f"{prefix}{i}{j}"


# ---------------------------------------------------------------------------
# Type A
# ---------------------------------------------------------------------------


def _positions_A(comp: CompositionA) -> list[tuple[int, int]]:
    n = comp.n
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if comp.block_of(i) < comp.block_of(j)
    ]


def nilradical_A(comp: CompositionA) -> tuple[LieAlgebra, tuple[tuple[int, int], ...]]:
    """Strictly block-upper matrices; returns the algebra and its (i, j) basis order."""
    n = comp.n
    positions = _positions_A(comp)
    expected_dim = (n * n - sum(p * p for p in comp.parts)) // 2
    assert len(positions) == expected_dim
    wide = n > 9
    labels = [_pos_label("E", i, j, wide) for i, j in positions]
    mats = [_e(i, j) for i, j in positions]
    algebra = _algebra_from_matrices(labels, mats, positions)
    return algebra, tuple(positions)


def index_formula_A(comp: CompositionA) -> int:
    n = comp.n
    p = comp.split_point()
    value = 2 * p * (n - p) - (n * n - sum(q * q for q in comp.parts)) // 2
    assert value >= 0
    return value


def cp_ideal_A(comp: CompositionA) -> Subspace:
    """Full off-diagonal block cut at the split point, as a coordinate span."""
    positions = _positions_A(comp)
    p = comp.split_point()
    dim = len(positions)
    vectors = []
    for k, (i, j) in enumerate(positions):
        if i <= p < j:
            v = [ZERO] * dim
            v[k] = ONE
            vectors.append(v)
    return Subspace.span(dim, vectors)


def regular_f_A(comp: CompositionA) -> Functional:
    """Indicator of the anti-diagonal positions (i, n+1-i), ile min(p, n-p)."""
    positions = _positions_A(comp)
    n = comp.n
    p = comp.split_point()
    cut = min(p, n - p)
    coords = [ZERO] * len(positions)
    for k, (i, j) in enumerate(positions):
        if i <= cut and j == n + 1 - i:
            coords[k] = ONE
    return Functional(len(positions), tuple(coords))


# ---------------------------------------------------------------------------
# Type C
# ---------------------------------------------------------------------------

RootC = tuple[str, int, int]  # ("m", i, j) or ("p", i, j) with i <= j


def _roots_C(comp: CompositionC) -> list[RootC]:
    r = comp.r
    m = len(comp.parts)
    out: list[RootC] = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            if comp.block_of(i) < comp.block_of(j):
                out.append(("m", i, j))
    for i in range(1, r + 1):
        for j in range(i, r + 1):
            if comp.block_of(i) + comp.block_of(j) <= m:
                out.append(("p", i, j))
    return out


def _root_matrix_C(root: RootC, r: int) -> tuple[SparseMat, tuple[int, int]]:
    """Matrix and lead position; coordinates p_1..p_r, p_-r..p_-1 are 1..2r."""
    n = 2 * r
    kind, i, j = root
    if kind == "m":
        mat = _mat_add(_e(i, j), _mat_scale(_e(n + 1 - j, n + 1 - i), Fraction(-1)))
        return mat, (i, j)
    if i == j:
        return _e(i, n + 1 - i), (i, n + 1 - i)
    mat = _mat_add(_e(i, n + 1 - j), _e(j, n + 1 - i))
    return mat, (i, n + 1 - j)


def _root_label_C(root: RootC, wide: bool) -> str:
    kind, i, j = root
    return _pos_label("Xm" if kind == "m" else "Xp", i, j, wide)


def nilradical_C(comp: CompositionC) -> tuple[LieAlgebra, tuple[RootC, ...]]:
    roots = _roots_C(comp)
    r, r1, ell = comp.r, comp.r1, comp.ell
    numerator = 2 * (r * r - r1 * r1) - sum(p * p for p in comp.parts[:ell]) + (r - r1)
    assert numerator % 2 == 0
    expected_dim = numerator // 2
    assert len(roots) == expected_dim, (len(roots), expected_dim)
    wide = r > 9
    labels = [_root_label_C(root, wide) for root in roots]
    mats = []
    leads = []
    for root in roots:
        mat, lead = _root_matrix_C(root, r)
        mats.append(mat)
        leads.append(lead)
    algebra = _algebra_from_matrices(labels, mats, leads)
    return algebra, tuple(roots)


def index_formula_C(comp: CompositionC) -> int:
    return sum(p * (p + 1) for p in comp.parts[: comp.ell]) // 2


def cp_ideal_C(comp: CompositionC) -> Subspace:
    roots = _roots_C(comp)
    r, r1 = comp.r, comp.r1
    dim = len(roots)
    vectors = []
    for k, (kind, i, j) in enumerate(roots):
        if kind == "p" and i <= r - r1:
            v = [ZERO] * dim
            v[k] = ONE
            vectors.append(v)
    return Subspace.span(dim, vectors)


def regular_f_C(comp: CompositionC) -> Functional:
    roots = _roots_C(comp)
    r, r1 = comp.r, comp.r1
    coords = [ZERO] * len(roots)
    for k, (kind, i, j) in enumerate(roots):
        if kind == "p" and i == j and i <= r - r1:
            coords[k] = ONE
    return Functional(len(roots), tuple(coords))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Theorem62Report:
    family: str
    parts: tuple[int, ...]
    dim_n: int
    formula_index: int
    computed_index: int
    certified: bool
    cp: CPReport
    perp_equal: bool
    f_regular: bool
    ok: bool


def verify_theorem62(
    parts: Sequence[int], family: str, policy: RankPolicy = DEFAULT_POLICY
) -> Theorem62Report:
    """Build N, P, f for a composition and check every claimed property."""
    family = family.upper()
    if family == "A":
        comp = CompositionA(tuple(parts))
        algebra, _ = nilradical_A(comp)
        p = cp_ideal_A(comp)
        f = regular_f_A(comp)
        formula = index_formula_A(comp)
    elif family == "C":
        comp = CompositionC(tuple(parts))
        algebra, _ = nilradical_C(comp)
        p = cp_ideal_C(comp)
        f = regular_f_C(comp)
        formula = index_formula_C(comp)
    else:
        raise UnsupportedType("only types A and C carry the construction")
    rep = index(algebra, policy)
    cp_rep = is_cp(algebra, p, policy)
    perp_equal = perp_of(algebra, p, f) == p
    f_regular = stabilizer(algebra, f).dim == formula
    ok = (
        rep.index == formula
        and cp_rep.is_cp
        and cp_rep.is_ideal
        and perp_equal
        and f_regular
    )
    return Theorem62Report(
        family=family,
        parts=tuple(parts),
        dim_n=algebra.dim,
        formula_index=formula,
        computed_index=rep.index,
        certified=rep.certified,
        cp=cp_rep,
        perp_equal=perp_equal,
        f_regular=f_regular,
        ok=ok,
    )


# ---------------------------------------------------------------------------
# Borel subalgebras of the classical types
# ---------------------------------------------------------------------------

_RANK_CAPS = {"A": 7, "B": 5, "C": 5, "D": 5}


def _so_basis(n: int) -> tuple[list[str], list[SparseMat], list[tuple[int, int]]]:
    """Strictly upper part of so_n with the anti-diagonal symmetric form."""
    r = n // 2
    labels, mats, leads = [], [], []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if a + b >= n + 1:
                continue
            mat = _mat_add(_e(a, b), _mat_scale(_e(n + 1 - b, n + 1 - a), Fraction(-1)))
            if b <= r:
                label = _pos_label("Xm", a, b, r > 9)
            elif n % 2 and b == r + 1:
                label = f"Xe{a}"
            else:
                label = _pos_label("Xp", a, n + 1 - b, r > 9)
            labels.append(label)
            mats.append(mat)
            leads.append((a, b))
    return labels, mats, leads


def _cartan_anti(n: int, r: int) -> tuple[list[str], list[SparseMat], list[tuple[int, int]]]:
    labels = [f"H{a}" for a in range(1, r + 1)]
    mats = [
        _mat_add(_e(a, a), _mat_scale(_e(n + 1 - a, n + 1 - a), Fraction(-1)))
        for a in range(1, r + 1)
    ]
    leads = [(a, a) for a in range(1, r + 1)]
    return labels, mats, leads


def borel_data_classical(family: str, rank: int) -> tuple[LieAlgebra, LieAlgebra]:
    """Nilradical N and Borel B = N + Cartan for the classical families.

    Realizations use anti-diagonal bilinear/symplectic forms so that N is
    literally strictly upper triangular; type A matches nilradical_A on the
    all-ones composition label for label.
    """
    family = family.upper()
    if family not in _RANK_CAPS:
        raise UnsupportedType(f"unknown family {family!r}")
    if rank < 1 or rank > _RANK_CAPS[family]:
        raise UnsupportedType(f"family {family} supported for rank 1..{_RANK_CAPS[family]}")
    if family == "A":
        n = rank + 1
        positions = _positions_A(CompositionA((1,) * n))
        wide = n > 9
        n_labels = [_pos_label("E", i, j, wide) for i, j in positions]
        n_mats = [_e(i, j) for i, j in positions]
        n_leads = positions
        c_labels = [f"H{a}" for a in range(1, n)]
        c_mats = [_mat_add(_e(a, a), _mat_scale(_e(a + 1, a + 1), Fraction(-1))) for a in range(1, n)]
        c_leads = [(a, a) for a in range(1, n)]
    elif family == "C":
        if rank < 2:
            raise UnsupportedType("type C needs rank >= 2")
        comp = CompositionC((1,) * (2 * rank))
        roots = _roots_C(comp)
        n_labels = [_root_label_C(root, rank > 9) for root in roots]
        n_mats, n_leads = [], []
        for root in roots:
            mat, lead = _root_matrix_C(root, rank)
            n_mats.append(mat)
            n_leads.append(lead)
        c_labels, c_mats, c_leads = _cartan_anti(2 * rank, rank)
    else:
        if family == "B" and rank < 2:
            raise UnsupportedType("type B needs rank >= 2")
        if family == "D" and rank < 4:
            raise UnsupportedType("type D needs rank >= 4")
        n = 2 * rank + 1 if family == "B" else 2 * rank
        n_labels, n_mats, n_leads = _so_basis(n)
        c_labels, c_mats, c_leads = _cartan_anti(n, rank)
    nilradical = _algebra_from_matrices(n_labels, n_mats, n_leads)
    borel = _algebra_from_matrices(
        n_labels + c_labels, n_mats + c_mats, list(n_leads) + list(c_leads)
    )
    return nilradical, borel


@dataclass(frozen=True)
class Table1Row:
    dim_n: int
    index_n: int
    index_b: int
    half: int
    max_abelian: int


#: Exceptional rows are shipped as documentation constants; no computation path.
EXCEPTIONAL_TABLE1 = {
    "E6": Table1Row(36, 4, 2, 20, 16),
    "E7": Table1Row(63, 7, 0, 35, 27),
    "E8": Table1Row(120, 8, 0, 64, 36),
    "F4": Table1Row(24, 4, 0, 14, 9),
    "G2": Table1Row(6, 2, 0, 4, 3),
}


def table1_row(family: str, rank: int) -> Table1Row:
    family = family.upper()
    if family == "A":
        if rank % 2 == 0:
            t = rank // 2
            return Table1Row(t * (2 * t + 1), t, t, t * (t + 1), t * (t + 1))
        t = (rank - 1) // 2
        return Table1Row((t + 1) * (2 * t + 1), t + 1, t, (t + 1) ** 2, (t + 1) ** 2)
    if family == "B":
        if rank == 3:
            return Table1Row(9, 3, 0, 6, 5)
        if rank >= 4:
            return Table1Row(rank * rank, rank, 0, rank * (rank + 1) // 2, rank * (rank - 1) // 2 + 1)
        raise UnsupportedType("type B rows start at rank 3")
    if family == "C":
        if rank >= 2:
            return Table1Row(rank * rank, rank, 0, rank * (rank + 1) // 2, rank * (rank + 1) // 2)
        raise UnsupportedType("type C rows start at rank 2")
    if family == "D":
        if rank >= 4:
            t = rank // 2
            if rank % 2 == 0:
                return Table1Row(2 * t * (2 * t - 1), 2 * t, 0, 2 * t * t, t * (2 * t - 1))
            return Table1Row(2 * t * (2 * t + 1), 2 * t, 1, 2 * t * (t + 1), t * (2 * t + 1))
        raise UnsupportedType("type D rows start at rank 4")
    raise UnsupportedType(f"unknown family {family!r}")


@dataclass(frozen=True)
class Table1Report:
    family: str
    rank: int
    row: Table1Row
    dim_n: int
    index_n: int
    index_b: int
    sum_rule: bool
    cp: CPReport | None
    cp_expected: bool
    half_exceeds_m: bool | None
    ok: bool


def table1_check(family: str, rank: int, policy: RankPolicy = DEFAULT_POLICY) -> Table1Report:
    """Compare computed Borel data against the closed-form row.

    For types A and C the distinguished abelian ideal is verified as a CP
    of dimension (dim N + i(N))/2 = m.  For B and D the bound exceeds the
    recorded maximal abelian dimension, so no CP is expected; the m value
    is a recorded constant, never recomputed.
    """
    family = family.upper()
    row = table1_row(family, rank)
    nilradical, borel = borel_data_classical(family, rank)
    i_n = index(nilradical, policy)
    i_b = index(borel, policy)
    cp_rep = None
    half_exceeds = None
    if family == "A":
        comp = CompositionA((1,) * (rank + 1))
        cp_rep = is_cp(nilradical, cp_ideal_A(comp), policy)
    elif family == "C":
        comp = CompositionC((1,) * (2 * rank))
        cp_rep = is_cp(nilradical, cp_ideal_C(comp), policy)
    else:
        half_exceeds = row.half > row.max_abelian
    cp_expected = family in ("A", "C")
    ok = (
        nilradical.dim == row.dim_n
        and i_n.index == row.index_n
        and i_b.index == row.index_b
        and i_n.index + i_b.index == rank
    )
    if cp_expected:
        ok = (
            ok
            and cp_rep is not None
            and cp_rep.is_cp
            and cp_rep.is_ideal
            and cp_rep.dim_p == row.half == row.max_abelian
        )
    else:
        ok = ok and bool(half_exceeds)
    return Table1Report(
        family=family,
        rank=rank,
        row=row,
        dim_n=nilradical.dim,
        index_n=i_n.index,
        index_b=i_b.index,
        sum_rule=i_n.index + i_b.index == rank,
        cp=cp_rep,
        cp_expected=cp_expected,
        half_exceeds_m=half_exceeds,
        ok=ok,
    )


# ---------------------------------------------------------------------------
# Normalizer of a principal nilpotent centralizer in sl_n
# ---------------------------------------------------------------------------


def _sl_basis(n: int) -> tuple[list[SparseMat], list[str]]:
    mats: list[SparseMat] = []
    labels: list[str] = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                mats.append(_e(i, j))
                labels.append(_pos_label("E", i, j, n > 9))
    for a in range(1, n):
        mats.append(_mat_add(_e(a, a), _mat_scale(_e(a + 1, a + 1), Fraction(-1))))
        labels.append(f"H{a}")
    return mats, labels


def _sl_coords(mat: SparseMat, n: int) -> tuple[Fraction, ...]:
    """Coordinates of a traceless matrix over the off-diagonal + H basis."""
    off = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                off.append(mat.get((i, j), ZERO))
    diag = [mat.get((a, a), ZERO) for a in range(1, n + 1)]
    assert sum(diag) == 0, "matrix must be traceless"
    partial = []
    run = ZERO
    for a in range(n - 1):
        run += diag[a]
        partial.append(run)
    return tuple(off + partial)


@dataclass(frozen=True)
class NormalizerReport:
    n: int
    dim_centralizer: int
    centralizer_abelian: bool
    dim_normalizer: int
    index_normalizer: int
    cp: CPReport
    ok: bool


def principal_nilpotent_normalizer(
    n: int, policy: RankPolicy = DEFAULT_POLICY
) -> NormalizerReport:
    """In sl_n: the centralizer of the regular nilpotent sum of simple root
    vectors, and its normalizer, which is index zero with the centralizer
    as a commutative polarization ideal."""
    if not 2 <= n <= 6:
        raise UnsupportedType("supported for 2 <= n <= 6")
    mats, _ = _sl_basis(n)
    dim = len(mats)
    x: SparseMat = {}
    for i in range(1, n):
        x = _mat_add(x, _e(i, i + 1))
    ad_cols = [_sl_coords(_mat_commutator(x, m), n) for m in mats]
    ad_x = QMatrix(dim, dim, tuple(tuple(col[k] for col in ad_cols) for k in range(dim)))
    cx = Subspace(dim, tuple(kernel(ad_x)))

    def as_matrix(vec: Sequence[Fraction]) -> SparseMat:
        out: SparseMat = {}
        for coeff, m in zip(vec, mats):
            if coeff:
                out = _mat_add(out, _mat_scale(m, coeff))
        return out

    cx_mats = [as_matrix(row) for row in cx.basis]
    rows = []
    for cmat in cx_mats:
        cols = [cx.residual(_sl_coords(_mat_commutator(m, cmat), n)) for m in mats]
        for k in range(dim):
            row = [cols[a][k] for a in range(dim)]
            if any(v != 0 for v in row):
                rows.append(row)
    normalizer = Subspace(dim, tuple(kernel(QMatrix.from_rows(rows, dim))))

    f_mats = [as_matrix(row) for row in normalizer.basis]
    f_dim = normalizer.dim
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(f_dim):
        for b in range(a + 1, f_dim):
            w = _sl_coords(_mat_commutator(f_mats[a], f_mats[b]), n)
            coords = normalizer.coordinates_of(w)
            assert coords is not None, "normalizer must be a subalgebra"
            table = {k: c for k, c in enumerate(coords) if c}
            if table:
                brackets[(a, b)] = table
    f_alg = new_lie_algebra(f_dim, tuple(f"y{k + 1}" for k in range(f_dim)), brackets)

    cx_coords = [normalizer.coordinates_of(row) for row in cx.basis]
    assert all(c is not None for c in cx_coords), "centralizer must sit inside its normalizer"
    cx_in_f = Subspace.span(f_dim, cx_coords)
    abelian = is_abelian(f_alg, cx_in_f)
    idx = index(f_alg, policy)
    cp_rep = is_cp(f_alg, cx_in_f, policy)
    ok = (
        cx.dim == n - 1
        and normalizer.dim == 2 * (n - 1)
        and abelian
        and idx.index == 0
        and cp_rep.is_cp
        and cp_rep.is_ideal
    )
    return NormalizerReport(
        n=n,
        dim_centralizer=cx.dim,
        centralizer_abelian=abelian,
        dim_normalizer=normalizer.dim,
        index_normalizer=idx.index,
        cp=cp_rep,
        ok=ok,
    )
