"""Exact rational linear algebra, sparse polynomials, and generic rank.

All arithmetic is exact: dense matrices hold `fractions.Fraction` entries,
and rank over the field of rational functions in several variables is
computed in two ways that cross-check each other.

* Randomized: evaluate the matrix of linear forms at integer points drawn
  uniformly from [-B, B]^nvars and take the maximal rank seen.  Any
  specialization rank is a lower bound for the generic rank; by the
  Schwartz-Zippel lemma a single sample misses with probability at most
  min(rows, cols) / (2B + 1), so with the default B = 10**6 and 5 samples
  failure is negligible at desk scale.
* Certified: fraction-free (Bareiss) elimination carried out symbolically
  over sparse polynomial entries.  All divisions are exact by Sylvester's
  identity.  Enabled by default only for matrices of side <= 12 to bound
  intermediate-expression swell.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import ExactDivisionError

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

VecLike = Sequence["Fraction | int"]

#: Largest matrix side for which symbolic certification is on by default.
CERTIFY_SIDE_LIMIT = 12


def as_vector(values: VecLike) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def format_rat(x: Fraction) -> str:
    """Canonical string form: "p" for integers, "p/q" with q > 0 otherwise."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Dense rational matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QMatrix:
    """Dense matrix of rationals; immutable after construction."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count must equal rows x cols")

    @staticmethod
    def from_rows(rows: Iterable[VecLike], cols: int | None = None) -> QMatrix:
        data = tuple(as_vector(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols is required for an empty row list")
            cols = len(data[0])
        return QMatrix(len(data), cols, data)

    @staticmethod
    def zero(rows: int, cols: int) -> QMatrix:
        return QMatrix(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> QMatrix:
        return QMatrix(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> QMatrix:
        data = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return QMatrix(self.cols, self.rows, data)

    def mul_vector(self, v: VecLike) -> tuple[Fraction, ...]:
        vv = as_vector(v)
        if len(vv) != self.cols:
            raise ValueError("vector length must equal cols")
        return tuple(sum((row[j] * vv[j] for j in range(self.cols)), ZERO) for row in self.entries)

    def matmul(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose()
        data = tuple(
            tuple(sum((a * b for a, b in zip(row, col)), ZERO) for col in ot.entries)
            for row in self.entries
        )
        return QMatrix(self.rows, other.cols, data)


def rref(rows: Sequence[VecLike], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    a = [list(as_vector(r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c]
        if inv != 1:
            a[r] = [x / inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank_exact(m: QMatrix) -> int:
    """Rank over the rationals by integer fraction-free (Bareiss) elimination.

    Each row is first scaled to integers by the lcm of its denominators;
    row scaling does not change the rank.
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    a: list[list[int]] = []
    for row in m.entries:
        den = lcm(*(x.denominator for x in row))
        a.append([int(x * den) for x in row])
    nr, nc = m.rows, m.cols
    rank = 0
    prev = 1
    while rank < min(nr, nc):
        found = None
        for j in range(rank, nc):
            for i in range(rank, nr):
                if a[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break
        pi, pj = found
        if pi != rank:
            a[rank], a[pi] = a[pi], a[rank]
        if pj != rank:
            for row_ in a:
                row_[rank], row_[pj] = row_[pj], row_[rank]
        piv = a[rank][rank]
        for i in range(rank + 1, nr):
            rik = a[i][rank]
            for j in range(rank + 1, nc):
                a[i][j] = (piv * a[i][j] - rik * a[rank][j]) // prev
            a[i][rank] = 0
        prev = piv
        rank += 1
    return rank


def kernel(m: QMatrix) -> list[tuple[Fraction, ...]]:
    """Reduced-echelon basis of the right null space {v : m v = 0}."""
    red, pivots = rref(m.entries, m.cols)
    pivot_set = set(pivots)
    basis = []
    for c in range(m.cols):
        if c in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[c] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][c]
        basis.append(v)
    out, _ = rref(basis, m.cols)
    return [tuple(r) for r in out]


def solve_linear_system(m: QMatrix, rhs: VecLike) -> tuple[Fraction, ...] | None:
    """One solution of m x = rhs if consistent, else None."""
    b = as_vector(rhs)
    if len(b) != m.rows:
        raise ValueError("rhs length must equal rows")
    aug = [list(row) + [b[i]] for i, row in enumerate(m.entries)]
    red, pivots = rref(aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = red[i][m.cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Sparse polynomial over the rationals in a fixed number of variables.

    Terms map exponent tuples to nonzero rational coefficients; zero
    coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Fraction] = {
            mono: coeff for mono, coeff in (terms or {}).items() if coeff
        }

    @staticmethod
    def zero(nvars: int) -> Poly:
        return Poly(nvars)

    @staticmethod
    def constant(nvars: int, value: Fraction | int) -> Poly:
        value = Fraction(value)
        return Poly(nvars, {(0,) * nvars: value} if value else {})

    @staticmethod
    def variable(nvars: int, k: int, coeff: Fraction | int = 1) -> Poly:
        mono = tuple(1 if i == k else 0 for i in range(nvars))
        return Poly(nvars, {mono: Fraction(coeff)})

    @staticmethod
    def from_linform(form: Mapping[int, Fraction], nvars: int) -> Poly:
        terms = {}
        for k, c in form.items():
            mono = tuple(1 if i == k else 0 for i in range(nvars))
            terms[mono] = Fraction(c)
        return Poly(nvars, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nterms(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.nvars, out)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, ZERO) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.nvars, out)

    def exact_div(self, other: Poly) -> Poly:
        """Exact quotient self / other; raises ExactDivisionError on remainder.

        Repeatedly cancels the lex-leading term.  When the division is exact
        the leading monomial of the running remainder strictly decreases, so
        the loop terminates with an empty remainder.
        """
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        num = dict(self.terms)
        out: dict[tuple[int, ...], Fraction] = {}
        lead_o = max(other.terms)
        coeff_o = other.terms[lead_o]
        while num:
            lead = max(num)
            mono = tuple(a - b for a, b in zip(lead, lead_o))
            if any(e < 0 for e in mono):
                raise ExactDivisionError("division is not exact")
            c = num[lead] / coeff_o
            out[mono] = out.get(mono, ZERO) + c
            for m2, c2 in other.terms.items():
                m3 = tuple(a + b for a, b in zip(mono, m2))
                v = num.get(m3, ZERO) - c * c2
                if v:
                    num[m3] = v
                else:
                    num.pop(m3, None)
        return Poly(self.nvars, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point length must equal nvars")
        total = ZERO
        for mono, coeff in self.terms.items():
            v = coeff
            for e, x in zip(mono, point):
                if e:
                    v *= x**e
            total += v
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            factors = [f"t{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
            parts.append("*".join([format_rat(c)] + factors) if factors else format_rat(c))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Matrices of linear forms and generic rank
# ---------------------------------------------------------------------------

LinForm = Mapping[int, Fraction]


@dataclass(frozen=True)
class LinFormMatrix:
    """Matrix whose entries are linear forms (no constant term) in nvars symbols."""

    rows: int
    cols: int
    nvars: int
    entries: tuple[tuple[LinForm, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count must equal rows x cols")

    @staticmethod
    def build(rows: int, cols: int, nvars: int, entry) -> LinFormMatrix:
        """entry(i, j) returns a mapping var-index -> coefficient."""
        data = tuple(
            tuple({k: Fraction(c) for k, c in entry(i, j).items() if c} for j in range(cols))
            for i in range(rows)
        )
        return LinFormMatrix(rows, cols, nvars, data)

    def entry_str(self, i: int, j: int, names: Sequence[str] | None = None) -> str:
        form = self.entries[i][j]
        if not form:
            return "0"
        out = []
        for k in sorted(form):
            name = names[k] if names else f"t{k + 1}"
            c = form[k]
            if c == 1:
                out.append(f"+{name}")
            elif c == -1:
                out.append(f"-{name}")
            else:
                out.append(f"+{format_rat(c)}*{name}")
        s = "".join(out)
        return s[1:] if s.startswith("+") else s


def evaluate(m: LinFormMatrix, point: VecLike) -> QMatrix:
    """Specialize every linear form at the given point."""
    pt = as_vector(point)
    if len(pt) != m.nvars:
        raise ValueError("point length must equal nvars")
    data = tuple(
        tuple(sum((c * pt[k] for k, c in form.items()), ZERO) for form in row)
        for row in m.entries
    )
    return QMatrix(m.rows, m.cols, data)


@dataclass(frozen=True)
class RankPolicy:
    """Controls randomized rank evaluation and symbolic certification.

    certify=None means automatic: certify exactly when the matrix side
    (max of rows and cols) is at most CERTIFY_SIDE_LIMIT.  All randomness
    flows from `seed`; identical seeds reproduce identical results.
    """

    samples: int = 5
    coeff_bound: int = 10**6
    certify: bool | None = None
    seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.coeff_bound < 2:
            raise ValueError("coeff_bound must be >= 2")

    def certify_for(self, side: int) -> bool:
        if self.certify is None:
            return side <= CERTIFY_SIDE_LIMIT
        return self.certify

    def with_options(self, **kwargs) -> RankPolicy:
        return replace(self, **kwargs)


DEFAULT_POLICY = RankPolicy()


class RankResult(NamedTuple):
    rank: int
    certified: bool


def _symbolic_rank(m: LinFormMatrix) -> int:
    """Fraction-free elimination over polynomial entries.

    Pivot selection: fewest-terms nonzero entry first, ties by lowest
    (row, col), which limits term growth and is deterministic.  Row and
    column swaps both preserve rank.
    """
    a = [[Poly.from_linform(m.entries[i][j], m.nvars) for j in range(m.cols)] for i in range(m.rows)]
    nr, nc = m.rows, m.cols
    rank = 0
    prev: Poly | None = None
    while rank < min(nr, nc):
        best: tuple[int, int, int] | None = None
        for i in range(rank, nr):
            for j in range(rank, nc):
                if a[i][j]:
                    key = (a[i][j].nterms, i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        if pi != rank:
            a[rank], a[pi] = a[pi], a[rank]
        if pj != rank:
            for row_ in a:
                row_[rank], row_[pj] = row_[pj], row_[rank]
        piv = a[rank][rank]
        for i in range(rank + 1, nr):
            rik = a[i][rank]
            for j in range(rank + 1, nc):
                num = piv * a[i][j] - rik * a[rank][j]
                a[i][j] = num.exact_div(prev) if prev is not None else num
            a[i][rank] = Poly.zero(m.nvars)
        prev = piv
        rank += 1
    return rank


def generic_rank(m: LinFormMatrix, policy: RankPolicy = DEFAULT_POLICY) -> RankResult:
    """Rank of m over the field of rational functions in nvars variables.

    Returns (rank, certified).  The randomized result is always a lower
    bound; certified=True means the value is exact, either because symbolic
    elimination confirmed it or because a sample attained min(rows, cols).
    """
    bound = min(m.rows, m.cols)
    if bound == 0:
        return RankResult(0, True)
    rng = random.Random(policy.seed)
    b = policy.coeff_bound
    best = 0
    for _ in range(policy.samples):
        point = tuple(Fraction(rng.randint(-b, b)) for _ in range(m.nvars))
        best = max(best, rank_exact(evaluate(m, point)))
        if best == bound:
            return RankResult(best, True)
    if policy.certify_for(max(m.rows, m.cols)):
        sym = _symbolic_rank(m)
        if sym < best:
            raise ArithmeticError("symbolic rank below a sampled rank; elimination bug")
        return RankResult(sym, True)
    return RankResult(best, False)
