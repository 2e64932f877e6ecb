"""CP verification, witnesses, certificates, search, and lemma checks."""

from fractions import Fraction

import pytest

from liecp.errors import (
    ChainGap,
    NotAnIdeal,
    NotASubalgebra,
    NotCodimOne,
    NotRegular,
    WrongCodimension,
)
from liecp.exactla import RankPolicy
from liecp.liealg import (
    Functional,
    Subspace,
    lie_algebra_from_label_table,
    new_lie_algebra,
    parse_span,
)
from liecp.index import frobenius_semiradical, index
from liecp.cp import (
    FORM_KIND,
    FSR_KIND,
    centralizer_codim1_check,
    codim1_analysis,
    cp_witness_functional,
    is_cp,
    max_abelian_coordinate_ideal,
    no_cp_certificate,
    perp_of,
    quotient_cp_check,
    search_cp,
    subalgebra_cp_transfer,
    verify_index_chain,
    verify_no_cp_certificate,
)

F = Fraction
P = RankPolicy()


def diamond():
    return lie_algebra_from_label_table(
        ("t", "x", "y", "z"),
        {("t", "x"): {"x": -1}, ("t", "y"): {"y": 1}, ("x", "y"): {"z": 1}},
    )


def h3():
    return lie_algebra_from_label_table(("x", "y", "z"), {("x", "y"): {"z": 1}})


def h5():
    return lie_algebra_from_label_table(
        tuple(f"x{i}" for i in range(1, 6)),
        {
            ("x1", "x2"): {"x3": 1},
            ("x1", "x3"): {"x4": 1},
            ("x1", "x4"): {"x5": 1},
            ("x2", "x3"): {"x5": 1},
        },
    )


def j5():
    return lie_algebra_from_label_table(
        tuple(f"x{i}" for i in range(1, 6)),
        {("x1", "x2"): {"x3": 1}, ("x1", "x3"): {"x4": 1}},
    )


def g5():
    return lie_algebra_from_label_table(
        tuple(f"x{i}" for i in range(1, 6)),
        {("x1", "x2"): {"x3": 1}, ("x1", "x3"): {"x4": 1}, ("x2", "x3"): {"x5": 1}},
    )


def g6():
    return lie_algebra_from_label_table(
        tuple(f"x{i}" for i in range(1, 7)),
        {("x1", "x2"): {"x6": 1}, ("x1", "x3"): {"x4": 1}, ("x2", "x3"): {"x5": 1}},
    )


def morozov4():
    return lie_algebra_from_label_table(
        tuple(f"e{i}" for i in range(1, 7)),
        {("e1", "e2"): {"e5": 1}, ("e1", "e3"): {"e6": 1}, ("e2", "e4"): {"e6": 1}},
    )


def seeley_12457n(xi):
    return lie_algebra_from_label_table(
        ("a", "b", "c", "d", "e", "f", "g"),
        {
            ("a", "b"): {"c": 1},
            ("a", "c"): {"d": 1},
            ("a", "d"): {"g": 1},
            ("a", "e"): {"f": 1},
            ("a", "f"): {"g": 1},
            ("b", "c"): {"e": 1},
            ("b", "d"): {"f": 1},
            ("b", "e"): {"g": xi},
            ("b", "f"): {"g": 1},
            ("c", "d"): {"g": 1},
            ("c", "e"): {"g": -1},
        },
    )


def abelian(n):
    return new_lie_algebra(n, tuple(f"a{i}" for i in range(n)), {})


class TestIsCP:
    def test_morozov4_cp_ideal(self):
        L = morozov4()
        rep = is_cp(L, parse_span(L, "e3,e4,e5,e6"), P)
        assert rep.is_cp and rep.is_ideal
        assert rep.condition_dim and rep.condition_rank

    def test_h3_cp(self):
        L = h3()
        rep = is_cp(L, parse_span(L, "y,z"), P)
        assert rep.is_cp and rep.is_ideal
        assert rep.rank_value == 1

    def test_diamond_dimension_mismatch(self):
        L = diamond()
        rep = is_cp(L, parse_span(L, "y,z"), P)
        assert not rep.is_cp and not rep.condition_dim and not rep.condition_rank

    def test_conditions_agree_on_abelian_subalgebras(self):
        L = morozov4()
        for spec in ("e3,e4", "e5,e6", "e2,e4,e5,e6", "e1,e5,e6"):
            rep = is_cp(L, parse_span(L, spec), P)
            assert rep.condition_dim == rep.condition_rank

    def test_basis_invariance(self):
        L = morozov4()
        s1 = parse_span(L, "e3,e4,e5,e6")
        s2 = Subspace.span(6, [(0, 0, 1, 1, 0, 0), (0, 0, 1, -1, 2, 0), (0, 0, 0, 0, 1, 1), (0, 0, 0, 0, 0, 3)])
        assert s1 == s2
        assert is_cp(L, s1, P) == is_cp(L, s2, P)


class TestWitness:
    def test_morozov4_witness_found_and_verified(self):
        L = morozov4()
        p = parse_span(L, "e3,e4,e5,e6")
        f = cp_witness_functional(L, p, P)
        assert f is not None
        assert perp_of(L, p, f) == p

    def test_diamond_no_witness(self):
        L = diamond()
        assert cp_witness_functional(L, parse_span(L, "y,z"), P, attempts=24) is None

    def test_nonabelian_input_rejected(self):
        L = diamond()
        with pytest.raises(NotASubalgebra):
            cp_witness_functional(L, parse_span(L, "x,y"), P)


class TestCertificates:
    def test_diamond_both_kinds(self):
        L = diamond()
        fsr_cert = no_cp_certificate(L, P, kind=FSR_KIND)
        form_cert = no_cp_certificate(L, P, kind=FORM_KIND)
        assert fsr_cert is not None and verify_no_cp_certificate(L, fsr_cert, P)
        assert form_cert is not None and verify_no_cp_certificate(L, form_cert, P)

    def test_g5_and_g6_form_kind(self):
        for L in (g5(), g6()):
            cert = no_cp_certificate(L, P, kind=FORM_KIND)
            assert cert is not None and verify_no_cp_certificate(L, cert, P)

    def test_morozov4_no_certificate(self):
        assert no_cp_certificate(morozov4(), P) is None

    def test_seeley_family_fsr_certificate_at_one(self):
        L = seeley_12457n(F(1))
        cert = no_cp_certificate(L, P)
        assert cert is not None and cert.kind == FSR_KIND
        assert verify_no_cp_certificate(L, cert, P)
        target = Subspace.span(
            7,
            [(1, -1, 0, 0, 0, 0, 0)] + [tuple(F(int(i == j)) for i in range(7)) for j in range(2, 7)],
        )
        u, v = cert.pair
        assert target.contains(u) and target.contains(v)

    def test_seeley_family_generic_parameter_has_cp(self):
        L = seeley_12457n(F(2))
        assert no_cp_certificate(L, P) is None
        rep = is_cp(L, parse_span(L, "d,e,f,g"), P)
        assert rep.is_cp and rep.is_ideal

    def test_abelian_rejected(self):
        with pytest.raises(ValueError):
            no_cp_certificate(abelian(2), P)

    def test_tampered_certificate_fails_verification(self):
        L = diamond()
        cert = no_cp_certificate(L, P, kind=FORM_KIND)
        bad = type(cert)(kind=FORM_KIND, form_point=tuple(F(0) for _ in cert.form_point))
        assert not verify_no_cp_certificate(L, bad, P)


class TestSearch:
    def test_h5(self):
        L = h5()
        found = search_cp(L, P)
        # the lexicographically first witness is <x2,x4,x5>; the classical
        # witness <x3,x4,x5> is a CP as well
        assert found == parse_span(L, "x2,x4,x5")
        assert is_cp(L, parse_span(L, "x3,x4,x5"), P).is_cp

    def test_j5(self):
        L = j5()
        found = search_cp(L, P)
        assert found == parse_span(L, "x2,x3,x4,x5")

    def test_g6_none(self):
        assert search_cp(g6(), P) is None
        assert no_cp_certificate(g6(), P) is not None

    def test_abelian_full_space(self):
        L = abelian(3)
        assert search_cp(L, P) == Subspace.full(3)

    def test_found_cp_contains_center_and_fsr(self):
        from liecp.liealg import center

        for L in (h5(), j5(), morozov4()):
            found = search_cp(L, P)
            assert found is not None
            assert found.contains_subspace(center(L))
            assert found.contains_subspace(frobenius_semiradical(L, P).subspace)

    def test_second_tier_combination_span(self):
        # [a,b] = c, [a,c] = z, [b,c] = z: index 2, so a CP has dimension 3,
        # but every 3-element coordinate span hits a nonzero bracket.  The
        # unique CP is <a-b, c, z>, reachable only through the combination
        # tier of the search.
        L = lie_algebra_from_label_table(
            ("a", "b", "c", "z"),
            {("a", "b"): {"c": 1}, ("a", "c"): {"z": 1}, ("b", "c"): {"z": 1}},
        )
        assert index(L, P).index == 2
        for spec in ("a,b,z", "a,c,z", "b,c,z", "a,b,c"):
            assert not is_cp(L, parse_span(L, spec), P).is_cp
        found = search_cp(L, P)
        expected = Subspace.span(
            4, [(1, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
        )
        assert found == expected
        assert is_cp(L, found, P).is_cp


class TestChains:
    def test_h3_chain(self):
        L = h3()
        rep = verify_index_chain(L, [parse_span(L, "y,z")], P)
        assert rep.ok and rep.indices == (1, 2)
        assert rep.cp_report is not None and rep.cp_report.is_cp

    def test_morozov4_chain(self):
        L = morozov4()
        rep = verify_index_chain(
            L, [parse_span(L, "e2,e3,e4,e5,e6"), parse_span(L, "e3,e4,e5,e6")], P
        )
        assert rep.ok and rep.indices == (2, 3, 4)

    def test_diamond_chain_index_drops(self):
        L = diamond()
        rep = verify_index_chain(L, [parse_span(L, "x,y,z")], P)
        assert not rep.ok and rep.indices == (2, 1)

    def test_chain_gap(self):
        L = morozov4()
        with pytest.raises(ChainGap):
            verify_index_chain(L, [parse_span(L, "e3,e4,e5,e6")], P)

    def test_not_a_subalgebra_level(self):
        L = diamond()
        with pytest.raises(NotASubalgebra):
            verify_index_chain(L, [parse_span(L, "t,x,y")], P)


class TestQuotientCheck:
    def test_dixmier_lister_drop(self):
        L = lie_algebra_from_label_table(
            tuple(f"e{i}" for i in range(1, 9)),
            {
                ("e1", "e2"): {"e5": 1},
                ("e1", "e3"): {"e6": 1},
                ("e1", "e4"): {"e7": 1},
                ("e1", "e5"): {"e8": -1},
                ("e2", "e3"): {"e8": 1},
                ("e2", "e4"): {"e6": 1},
                ("e2", "e6"): {"e7": -1},
                ("e3", "e4"): {"e5": -1},
                ("e3", "e5"): {"e7": -1},
                ("e4", "e6"): {"e8": -1},
            },
        )
        a = parse_span(L, "e8")
        p = a + parse_span(L, "e5,e6,e7")  # some abelian ideal containing A
        f = Functional.from_coords((0, 0, 0, 0, 0, 0, 1, 0))
        assert index(L, P).index == 2
        rep = quotient_cp_check(L, p, a, f, P)
        assert rep.index_quotient == 1 and rep.drop_ok

    def test_trivial_ideal(self):
        L = morozov4()
        p = parse_span(L, "e3,e4,e5,e6")
        f = cp_witness_functional(L, p, P)
        rep = quotient_cp_check(L, p, Subspace.zero(6), f, P)
        assert rep.ok and rep.index_quotient == 2

    def test_h3_regularity_rejection(self):
        # every regular functional of h3 is nonzero on the center, so f = y*
        # cannot satisfy both regularity and f(A) = 0 for A = <z>
        L = h3()
        with pytest.raises(NotRegular):
            quotient_cp_check(
                L,
                parse_span(L, "y,z"),
                parse_span(L, "z"),
                Functional.from_coords((0, 1, 0)),
                P,
            )

    def test_not_an_ideal(self):
        L = diamond()
        with pytest.raises(NotAnIdeal):
            quotient_cp_check(
                L,
                parse_span(L, "x,z"),
                parse_span(L, "x"),
                Functional.from_coords((0, 0, 1, 0)),
                P,
            )


class TestCodim1:
    def test_diamond_derived(self):
        L = diamond()
        rep = codim1_analysis(L, parse_span(L, "x,y,z"), P)
        assert rep.direction == -1 and not rep.fsr_in_m
        assert rep.status == "certified"

    def test_frobenius_2dim(self):
        L = lie_algebra_from_label_table(("x", "y"), {("x", "y"): {"y": 1}})
        rep = codim1_analysis(L, parse_span(L, "x"), P)
        assert rep.direction == 1
        assert rep.index_sub == 1 and rep.index_parent == 0

    def test_abelian_hyperplane(self):
        L = abelian(4)
        rep = codim1_analysis(L, parse_span(L, "a0,a1,a2"), P)
        assert rep.direction == -1

    def test_preconditions(self):
        L = diamond()
        with pytest.raises(NotCodimOne):
            codim1_analysis(L, parse_span(L, "y,z"), P)
        with pytest.raises(NotASubalgebra):
            codim1_analysis(
                lie_algebra_from_label_table(
                    ("x", "y", "z"), {("x", "y"): {"z": 1}}
                ),
                Subspace.span(3, [(1, 0, 0), (0, 1, 0)]),
                P,
            )


class TestCentralizerCheck:
    def test_h5_x4(self):
        L = h5()
        rep = centralizer_codim1_check(L, L.basis_vector(3), P)
        assert rep.centralizer.dim == 4
        assert rep.index_sub == rep.index_parent + 1 == 2
        assert rep.index_ok

    def test_h3_x(self):
        L = h3()
        rep = centralizer_codim1_check(L, L.basis_vector(0), P)
        assert rep.index_sub == 2 and rep.index_ok
        assert rep.square_integrable_transfer is True
        assert rep.transferred_cp_ok

    def test_diamond_t_rejected(self):
        L = diamond()
        with pytest.raises(WrongCodimension):
            centralizer_codim1_check(L, L.basis_vector(0), P)


class TestMaxAbelianIdeal:
    def test_morozov4(self):
        from liecp.liealg import is_abelian, is_ideal

        L = morozov4()
        dim, sub = max_abelian_coordinate_ideal(L)
        assert dim == 4 and is_abelian(L, sub) and is_ideal(L, sub)
        assert 2 * dim == L.dim + index(L, P).index  # reaches the CP bound
        # the documented maximal abelian ideal is among the dimension-4 ones
        classical = parse_span(L, "e3,e4,e5,e6")
        assert is_abelian(L, classical) and is_ideal(L, classical)

    def test_abelian(self):
        L = abelian(4)
        dim, sub = max_abelian_coordinate_ideal(L)
        assert dim == 4 and sub == Subspace.full(4)

    def test_free_two_step_on_4_generators_stays_below_bound(self):
        labels = [f"e{i}" for i in range(1, 5)] + [f"e{i}{j}" for i in range(1, 5) for j in range(i + 1, 5)]
        table = {}
        for i in range(1, 5):
            for j in range(i + 1, 5):
                table[(f"e{i}", f"e{j}")] = {f"e{i}{j}": 1}
        L = lie_algebra_from_label_table(tuple(labels), table)
        dim, _ = max_abelian_coordinate_ideal(L)
        assert dim == 7
        assert 2 * dim < L.dim + index(L, P).index  # 14 < 16: no coordinate CP


class TestTransfer:
    def test_morozov4_transfer(self):
        L = morozov4()
        rep = subalgebra_cp_transfer(
            L, parse_span(L, "e2,e3,e4,e5,e6"), parse_span(L, "e3,e4,e5,e6"), P
        )
        assert rep.cp_of_parent and rep.cp_of_sub and rep.index_relation and rep.equivalent

    def test_degenerate_m_equals_l(self):
        L = morozov4()
        rep = subalgebra_cp_transfer(L, Subspace.full(6), parse_span(L, "e3,e4,e5,e6"), P)
        assert rep.cp_of_parent and rep.equivalent

    def test_diamond_counterexample(self):
        L = diamond()
        rep = subalgebra_cp_transfer(L, parse_span(L, "x,y,z"), parse_span(L, "y,z"), P)
        assert not rep.cp_of_parent and rep.cp_of_sub and not rep.index_relation
        assert rep.equivalent


class TestConsistency:
    def test_no_certificate_then_search_may_find(self):
        # positive and negative machinery never both fire
        for L in (h5(), j5(), morozov4(), g5(), g6(), diamond()):
            found = search_cp(L, P)
            cert = no_cp_certificate(L, P)
            assert found is None or cert is None

    def test_cp_contains_fsr_and_center(self):
        from liecp.liealg import center

        L = morozov4()
        p = search_cp(L, P)
        assert p.contains_subspace(frobenius_semiradical(L, P).subspace + center(L))
