"""Commutative polarizations: verification, witnesses, search, certificates.

A commutative polarization (CP) of L is an abelian subalgebra P with
dim P = (dim L + index L) / 2; equivalently P = P^f for some functional f
(necessarily regular), equivalently the generic rank of the bracket
pairing between P and L equals dim L - dim P.  The dimension and rank
characterizations are provably equivalent, so a disagreement can only be
a randomized-rank artifact: it triggers an automatic certified re-run and
only then is reported as an error.

Negative results are certified soundly through two routes: a pair of
vectors in the sampled stabilizer span with nonzero bracket (the sampled
span is always contained in the true stabilizer-span ideal, which any CP
must absorb as a commutative subspace), or a nondegenerate invariant
symmetric form on a nonabelian algebra (which forces the stabilizer span
to be everything).

Every check here (generic ranks, echelon subspace identities) is
insensitive to extending the ground field, so conclusions drawn over the
rationals remain valid over any extension.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AmbientMismatch,
    ChainGap,
    FunctionalNotVanishing,
    InconsistentConditions,
    NotAnIdeal,
    NotASubalgebra,
    NotCodimOne,
    NotContained,
    NotRegular,
    WrongCodimension,
)
from .exactla import (
    DEFAULT_POLICY,
    ZERO,
    LinFormMatrix,
    QMatrix,
    RankPolicy,
    evaluate,
    generic_rank,
    kernel,
    rank_exact,
)
from .index import (
    frobenius_semiradical,
    index,
    invariant_symmetric_forms,
    stabilizer,
)
from .liealg import (
    Functional,
    LieAlgebra,
    Subspace,
    center,
    is_abelian,
    is_ideal,
    is_subalgebra,
    quotient,
    restrict,
)

Vector = tuple[Fraction, ...]

FSR_KIND = "fsr_noncommutative"
FORM_KIND = "invariant_form_nonabelian"


# ---------------------------------------------------------------------------
# CP verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CPReport:
    is_cp: bool
    is_ideal: bool
    abelian: bool
    subalgebra: bool
    condition_dim: bool
    condition_rank: bool
    dim_p: int
    index: int
    rank_value: int
    certified: bool
    witness_f: Functional | None = None


def pairing_matrix(L: LieAlgebra, p: Subspace) -> LinFormMatrix:
    """dim P x dim L matrix of linear forms expanding [h_i, x_j] in dual coordinates."""
    rows = []
    for h in p.basis:
        row = []
        for j in range(L.dim):
            form: dict[int, Fraction] = {}
            for a, coeff in enumerate(h):
                if not coeff:
                    continue
                for k, c in L.bracket_table(a, j).items():
                    v = form.get(k, ZERO) + coeff * c
                    if v:
                        form[k] = v
                    else:
                        form.pop(k, None)
            row.append(form)
        rows.append(tuple(row))
    return LinFormMatrix(p.dim, L.dim, L.dim, tuple(rows))


def is_cp(L: LieAlgebra, p: Subspace, policy: RankPolicy = DEFAULT_POLICY) -> CPReport:
    """Check the dimension and generic-rank characterizations and their agreement."""
    if p.ambient_dim != L.dim:
        raise AmbientMismatch("subspace ambient dimension differs from the algebra")
    abelian = is_abelian(L, p)
    subalg = is_subalgebra(L, p)
    ideal = is_ideal(L, p)

    def run(pol: RankPolicy):
        rep = index(L, pol)
        cond_dim = 2 * p.dim == L.dim + rep.index
        rank, rank_certified = generic_rank(pairing_matrix(L, p), pol)
        cond_rank = rank == L.dim - p.dim
        return rep, rank, rep.certified and rank_certified, cond_dim, cond_rank

    rep, rank, certified, cond_dim, cond_rank = run(policy)
    if abelian and subalg and cond_dim != cond_rank and not certified:
        # the two conditions are equivalent theorems; disagreement means a sampling miss
        rep, rank, certified, cond_dim, cond_rank = run(policy.with_options(certify=True))
    if abelian and subalg and cond_dim != cond_rank:
        raise InconsistentConditions(
            f"dimension condition {cond_dim} vs rank condition {cond_rank} under certification"
        )
    return CPReport(
        is_cp=abelian and subalg and cond_dim and cond_rank,
        is_ideal=ideal,
        abelian=abelian,
        subalgebra=subalg,
        condition_dim=cond_dim,
        condition_rank=cond_rank,
        dim_p=p.dim,
        index=rep.index,
        rank_value=rank,
        certified=certified,
    )


def perp_of(L: LieAlgebra, p: Subspace, f: Functional) -> Subspace:
    """P^f = {x in L : f([x, h]) = 0 for all h in P}, computed exactly."""
    rows = []
    for h in p.basis:
        rows.append([f(L.bracket(L.basis_vector(j), h)) for j in range(L.dim)])
    if not rows:
        return Subspace.full(L.dim)
    return Subspace(L.dim, tuple(kernel(QMatrix.from_rows(rows, L.dim))))


def cp_witness_functional(
    L: LieAlgebra, p: Subspace, policy: RankPolicy = DEFAULT_POLICY, attempts: int = 128
) -> Functional | None:
    """First sampled functional with P^f = P, verified regular; None if the cap runs out."""
    if not (is_abelian(L, p) and is_subalgebra(L, p)):
        raise NotASubalgebra("witness search requires an abelian subalgebra")
    idx = index(L, policy)
    rng = random.Random(policy.seed)
    for _ in range(attempts):
        f = Functional(L.dim, tuple(Fraction(rng.randint(-policy.coeff_bound, policy.coeff_bound)) for _ in range(L.dim)))
        if perp_of(L, p, f) == p and stabilizer(L, f).dim == idx.index:
            return f
    return None


# ---------------------------------------------------------------------------
# No-CP certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoCPCertificate:
    """Machine-checkable evidence that no CP exists.

    fsr_noncommutative: `pair` lies in the span of the stabilizers of the
    listed regular `functionals` and has nonzero bracket.  Any CP would
    contain every such stabilizer and be commutative, a contradiction.

    invariant_form_nonabelian: `form_point` evaluates the invariant-form
    family to a nondegenerate symmetric invariant form on a nonabelian
    algebra, which forces the stabilizer span to be the whole algebra.
    """

    kind: str
    pair: tuple[Vector, Vector] | None = None
    functionals: tuple[Functional, ...] = ()
    form_point: Vector | None = None


def _fsr_certificate(L: LieAlgebra, policy: RankPolicy) -> NoCPCertificate | None:
    rep = frobenius_semiradical(L, policy)
    rows = rep.subspace.basis
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if any(c != 0 for c in L.bracket(rows[a], rows[b])):
                return NoCPCertificate(
                    FSR_KIND, pair=(rows[a], rows[b]), functionals=rep.functionals
                )
    return None


def _form_certificate(L: LieAlgebra, policy: RankPolicy) -> NoCPCertificate | None:
    family = invariant_symmetric_forms(L)
    if generic_rank(family, policy).rank < L.dim:
        return None
    rng = random.Random(policy.seed)
    for _ in range(max(policy.samples, 16)):
        point = tuple(Fraction(rng.randint(-policy.coeff_bound, policy.coeff_bound)) for _ in range(family.nvars))
        if rank_exact(evaluate(family, point)) == L.dim:
            return NoCPCertificate(FORM_KIND, form_point=point)
    return None


def no_cp_certificate(
    L: LieAlgebra, policy: RankPolicy = DEFAULT_POLICY, kind: str | None = None
) -> NoCPCertificate | None:
    """Try the stabilizer-span route, then the invariant-form route.

    Absence of a certificate is not a proof that a CP exists.
    """
    if not L.sc:
        raise ValueError("no-CP certificates only apply to nonabelian algebras")
    if kind == FSR_KIND:
        return _fsr_certificate(L, policy)
    if kind == FORM_KIND:
        return _form_certificate(L, policy)
    if kind is not None:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return _fsr_certificate(L, policy) or _form_certificate(L, policy)


def verify_no_cp_certificate(
    L: LieAlgebra, cert: NoCPCertificate, policy: RankPolicy = DEFAULT_POLICY
) -> bool:
    """Re-check the evidence exactly (certified index for the regularity checks)."""
    certified = policy.with_options(certify=True)
    if cert.kind == FSR_KIND:
        if cert.pair is None or not cert.functionals:
            return False
        idx = index(L, certified)
        span = Subspace.zero(L.dim)
        for f in cert.functionals:
            s = stabilizer(L, f)
            if s.dim != idx.index:
                return False
            span = span + s
        u, v = cert.pair
        return span.contains(u) and span.contains(v) and any(c != 0 for c in L.bracket(u, v))
    if cert.kind == FORM_KIND:
        if cert.form_point is None:
            return False
        family = invariant_symmetric_forms(L)
        b = evaluate(family, cert.form_point)
        if rank_exact(b) != L.dim:
            return False
        for i in range(L.dim):
            for j in range(L.dim):
                if b.entries[i][j] != b.entries[j][i]:
                    return False
                for k in range(L.dim):
                    lhs = sum((c * b.entries[p][k] for p, c in L.bracket_table(i, j).items()), ZERO)
                    rhs = sum((c * b.entries[j][p] for p, c in L.bracket_table(i, k).items()), ZERO)
                    if lhs + rhs != 0:
                        return False
        return not is_abelian(L, Subspace.full(L.dim))
    return False


# ---------------------------------------------------------------------------
# CP search
# ---------------------------------------------------------------------------

_COMBO_COEFFS = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
)


def search_cp(
    L: LieAlgebra,
    policy: RankPolicy = DEFAULT_POLICY,
    combo_coeffs: Sequence[Fraction] = _COMBO_COEFFS,
) -> Subspace | None:
    """Enumerate coordinate spans, then spans with one two-label combination.

    Candidates must contain the center and the sampled stabilizer span.
    The first verified CP in lexicographic order wins; absence of a result
    is NOT a proof of non-existence.
    """
    idx = index(L, policy)
    if (L.dim + idx.index) % 2 != 0:
        raise InconsistentConditions("dim + index must be even")
    d = (L.dim + idx.index) // 2
    fsr = frobenius_semiradical(L, policy).subspace
    must_contain = fsr + center(L)
    if must_contain.dim > d:
        return None
    support = set()
    for row in must_contain.basis:
        support.update(j for j, x in enumerate(row) if x != 0)

    def confirmed(candidate: Subspace) -> bool:
        return (
            candidate.dim == d
            and candidate.contains_subspace(must_contain)
            and is_abelian(L, candidate)
            and is_subalgebra(L, candidate)
            and is_cp(L, candidate, policy).is_cp
        )

    for subset in itertools.combinations(range(L.dim), d):
        if not support <= set(subset):
            continue
        candidate = Subspace.span(L.dim, [L.basis_vector(i) for i in subset])
        if confirmed(candidate):
            return candidate
    if d == 0:
        return None
    for subset in itertools.combinations(range(L.dim), d - 1):
        rest = [i for i in range(L.dim) if i not in subset]
        for i, j in itertools.combinations(rest, 2):
            if not support <= set(subset) | {i, j}:
                continue
            for q in combo_coeffs:
                extra = [ZERO] * L.dim
                extra[i] = Fraction(1)
                extra[j] = q
                candidate = Subspace.span(
                    L.dim, [L.basis_vector(s) for s in subset] + [tuple(extra)]
                )
                if confirmed(candidate):
                    return candidate
    return None


def max_abelian_coordinate_ideal(L: LieAlgebra) -> tuple[int, Subspace]:
    """Largest coordinate-span abelian ideal; a lower bound for the true maximum."""
    for size in range(L.dim, 0, -1):
        for subset in itertools.combinations(range(L.dim), size):
            candidate = Subspace.span(L.dim, [L.basis_vector(i) for i in subset])
            if is_abelian(L, candidate) and is_ideal(L, candidate):
                return size, candidate
    return 0, Subspace.zero(L.dim)


# ---------------------------------------------------------------------------
# Structural lemma checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    dims: tuple[int, ...]
    indices: tuple[int, ...]
    steps_ok: bool
    final_abelian: bool
    cp_report: CPReport | None
    ok: bool


def verify_index_chain(
    L: LieAlgebra, chain: Sequence[Subspace], policy: RankPolicy = DEFAULT_POLICY
) -> ChainReport:
    """Descending chain from L, each step a codim-1 subalgebra with index up by 1."""
    levels = list(chain)
    if not levels or levels[0] != Subspace.full(L.dim):
        levels = [Subspace.full(L.dim)] + levels
    for t in range(1, len(levels)):
        prev, cur = levels[t - 1], levels[t]
        if cur.dim != prev.dim - 1:
            raise ChainGap(f"level {t} has dimension {cur.dim}, expected {prev.dim - 1}")
        if not prev.contains_subspace(cur) or not is_subalgebra(L, cur):
            raise NotASubalgebra(f"level {t} is not a subalgebra of the previous level")
    indices = tuple(index(restrict(L, lv), policy).index for lv in levels)
    steps_ok = all(indices[t] == indices[t - 1] + 1 for t in range(1, len(levels)))
    final = levels[-1]
    final_abelian = is_abelian(L, final)
    cp_report = None
    ok = steps_ok
    if steps_ok and final_abelian:
        cp_report = is_cp(L, final, policy)
        if not cp_report.is_cp:
            cp_report = is_cp(L, final, policy.with_options(certify=True))
            if not cp_report.is_cp:
                raise InconsistentConditions(
                    "a valid increasing-index chain must end in a commutative polarization"
                )
        ok = cp_report.is_cp
    return ChainReport(
        dims=tuple(lv.dim for lv in levels),
        indices=indices,
        steps_ok=steps_ok,
        final_abelian=final_abelian,
        cp_report=cp_report,
        ok=ok,
    )


@dataclass(frozen=True)
class QuotientCPReport:
    quotient_dim: int
    index_parent: int
    index_quotient: int
    drop_ok: bool
    projected_p: Subspace
    cp_in_quotient: CPReport
    ok: bool


def quotient_cp_check(
    L: LieAlgebra,
    p: Subspace,
    a: Subspace,
    f: Functional,
    policy: RankPolicy = DEFAULT_POLICY,
) -> QuotientCPReport:
    """CP descends to L/A when A is an ideal inside P killed by a regular f."""
    if not is_ideal(L, a):
        raise NotAnIdeal("A must be an ideal of L")
    if not p.contains_subspace(a):
        raise NotContained("A must be contained in P")
    if any(f(row) != 0 for row in a.basis):
        raise FunctionalNotVanishing("f must vanish on A")
    idx = index(L, policy)
    if stabilizer(L, f).dim != idx.index:
        raise NotRegular("f must be regular")
    q, qmap = quotient(L, a)
    projected = qmap.project_subspace(p)
    q_idx = index(q, policy)
    cp_rep = is_cp(q, projected, policy)
    drop_ok = q_idx.index == idx.index - a.dim
    return QuotientCPReport(
        quotient_dim=q.dim,
        index_parent=idx.index,
        index_quotient=q_idx.index,
        drop_ok=drop_ok,
        projected_p=projected,
        cp_in_quotient=cp_rep,
        ok=drop_ok and cp_rep.is_cp,
    )


@dataclass(frozen=True)
class Codim1Report:
    index_parent: int
    index_sub: int
    direction: int
    fsr_in_m: bool
    fsr_converged: bool
    status: str  # "certified" or "probable"


def codim1_analysis(
    L: LieAlgebra, m: Subspace, policy: RankPolicy = DEFAULT_POLICY
) -> Codim1Report:
    """Index of a codim-1 subalgebra moves by exactly 1; the direction is
    cross-checked against containment of the sampled stabilizer span."""
    if m.ambient_dim != L.dim:
        raise AmbientMismatch("subspace ambient dimension differs from the algebra")
    if m.dim != L.dim - 1:
        raise NotCodimOne(f"expected codimension 1, got {L.dim - m.dim}")
    if not is_subalgebra(L, m):
        raise NotASubalgebra("M must be a subalgebra")

    def run(pol: RankPolicy):
        i_l = index(L, pol)
        i_m = index(restrict(L, m), pol)
        return i_l, i_m

    i_l, i_m = run(policy)
    if abs(i_m.index - i_l.index) != 1 and not (i_l.certified and i_m.certified):
        i_l, i_m = run(policy.with_options(certify=True))
    if abs(i_m.index - i_l.index) != 1:
        raise InconsistentConditions("codimension-1 index dichotomy failed under certification")
    fsr_rep = frobenius_semiradical(L, policy)
    fsr_in_m = m.contains_subspace(fsr_rep.subspace)
    direction = i_m.index - i_l.index
    if i_l.certified and i_m.certified:
        status = "certified"
    elif direction == -1 and not fsr_in_m:
        # the sampled span escapes M, which soundly rules out the +1 case
        status = "certified"
    else:
        status = "probable"
    return Codim1Report(
        index_parent=i_l.index,
        index_sub=i_m.index,
        direction=direction,
        fsr_in_m=fsr_in_m,
        fsr_converged=fsr_rep.converged,
        status=status,
    )


@dataclass(frozen=True)
class CentralizerReport:
    centralizer: Subspace
    index_parent: int
    index_sub: int
    index_ok: bool
    square_integrable_transfer: bool | None
    cp_of_parent: Subspace | None
    transferred_cp: Subspace | None
    transferred_cp_ok: bool | None


def centralizer_codim1_check(
    L: LieAlgebra,
    u: Sequence,
    policy: RankPolicy = DEFAULT_POLICY,
    p: Subspace | None = None,
) -> CentralizerReport:
    """Codim-1 centralizers raise the index by one and transfer CPs both ways."""
    from .liealg import centralizer as centralizer_of
    from .index import is_square_integrable

    m = centralizer_of(L, u)
    if m.dim != L.dim - 1:
        raise WrongCodimension(f"centralizer has codimension {L.dim - m.dim}, expected 1")
    m_alg = restrict(L, m)
    i_l = index(L, policy)
    i_m = index(m_alg, policy)
    index_ok = i_m.index == i_l.index + 1
    sq_transfer = None
    if is_square_integrable(L, policy):
        sq_transfer = center(m_alg).dim == i_m.index
    if p is None:
        p = search_cp(L, policy)
    transferred = None
    transferred_ok = None
    if p is not None:
        if m.contains_subspace(p):
            inner = p
        else:
            inner = p.intersection(m) + Subspace.span(L.dim, [u])
        coords = [m.coordinates_of(row) for row in inner.basis]
        if all(c is not None for c in coords):
            transferred = Subspace.span(m.dim, coords)
            transferred_ok = is_cp(m_alg, transferred, policy).is_cp
    return CentralizerReport(
        centralizer=m,
        index_parent=i_l.index,
        index_sub=i_m.index,
        index_ok=index_ok,
        square_integrable_transfer=sq_transfer,
        cp_of_parent=p,
        transferred_cp=transferred,
        transferred_cp_ok=transferred_ok,
    )


@dataclass(frozen=True)
class TransferReport:
    cp_of_parent: bool
    cp_of_sub: bool
    index_relation: bool
    equivalent: bool


def subalgebra_cp_transfer(
    L: LieAlgebra, m: Subspace, p: Subspace, policy: RankPolicy = DEFAULT_POLICY
) -> TransferReport:
    """P is a CP of L iff P is a CP of M and i(M) = i(L) + dim L - dim M."""
    if not m.contains_subspace(p):
        raise NotContained("P must be contained in M")
    if not is_subalgebra(L, m):
        raise NotASubalgebra("M must be a subalgebra")
    m_alg = restrict(L, m)
    coords = [m.coordinates_of(row) for row in p.basis]
    if any(c is None for c in coords):
        raise NotContained("P must be contained in M")
    p_in_m = Subspace.span(m.dim, coords)
    lhs = is_cp(L, p, policy).is_cp
    cp_sub = is_cp(m_alg, p_in_m, policy).is_cp
    relation = index(m_alg, policy).index == index(L, policy).index + L.dim - m.dim
    rhs = cp_sub and relation
    if lhs != rhs:
        lhs = is_cp(L, p, policy.with_options(certify=True)).is_cp
        cp_sub = is_cp(m_alg, p_in_m, policy.with_options(certify=True)).is_cp
        relation = (
            index(m_alg, policy.with_options(certify=True)).index
            == index(L, policy.with_options(certify=True)).index + L.dim - m.dim
        )
        rhs = cp_sub and relation
    if lhs != rhs:
        raise InconsistentConditions("subalgebra transfer equivalence failed under certification")
    return TransferReport(cp_of_parent=lhs, cp_of_sub=cp_sub, index_relation=relation, equivalent=lhs == rhs)
