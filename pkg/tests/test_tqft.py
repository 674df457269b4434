"""Frobenius algebras and the operations mu_{p,q}(g): exact arithmetic only."""

import itertools
from fractions import Fraction

import pytest

from chordlab import chord as ch
from chordlab import tqft
from chordlab.errors import NoOutgoing

FIELDS = [tqft.Rationals(), tqft.PrimeField(2), tqft.PrimeField(3),
          tqft.PrimeField(5)]


class TestAxioms:
    @pytest.mark.parametrize("maker", [tqft.pd2, tqft.st2])
    @pytest.mark.parametrize("field_", FIELDS, ids=lambda F: F.name)
    def test_builtins_pass(self, maker, field_):
        report = tqft.check_axioms(maker(field_))
        assert report.all_pass, report.passed

    def test_st2_graded_axioms_included(self):
        report = tqft.check_axioms(tqft.st2())
        assert report.passed["graded_product"]
        assert report.passed["graded_coproduct"]

    def test_broken_coproduct_fails_with_witness(self):
        F = tqft.Rationals()
        base = tqft.pd2(F)
        # Delta(x) = x (x) 1 instead of x (x) x
        coprod = tqft._constants(F, 2, {(0, 0, 1): 1, (0, 1, 0): 1, (1, 1, 0): 1})
        bad = tqft.FrobeniusAlgebra(
            field_=F, basis=base.basis, product=base.product,
            coproduct=coprod, unit=base.unit)
        report = tqft.check_axioms(bad)
        assert not report.passed["module_left"] or not report.passed["module_right"]
        failing = next(k for k, v in report.passed.items() if not v)
        assert report.witnesses[failing] is not None


class TestMu:
    def test_p2_q1_is_the_product(self):
        A = tqft.pd2()
        assert tqft.mu(A, 2, 1, 0).rows() == A.m_matrix()

    def test_handle_operator_on_pd2(self):
        op = tqft.mu(tqft.pd2(), 1, 1, 1)
        # 1 -> 2x, x -> 0
        assert op.rows() == [[Fraction(0), Fraction(0)],
                             [Fraction(2), Fraction(0)]]

    def test_unit_side(self):
        op = tqft.mu(tqft.pd2(), 0, 1, 0)
        assert op.rows() == [[Fraction(1)], [Fraction(0)]]

    def test_q1_p1_g0_is_identity(self):
        for F in FIELDS:
            A = tqft.st2(F)
            assert tqft.mu(A, 1, 1, 0).rows() == tqft._identity(F, 2)

    def test_no_outgoing_rejected(self):
        with pytest.raises(NoOutgoing):
            tqft.mu(tqft.pd2(), 2, 0, 0)

    def test_handle_operator_is_central(self):
        # H commutes with multiplication by every basis element
        for maker in (tqft.pd2, tqft.st2):
            for field_ in FIELDS:
                A = maker(field_)
                F, d = A.field_, A.dim
                H = tqft._matmul(F, A.m_matrix(), A.delta_matrix())
                for i in range(d):
                    # L_i = m(e_i (x) -)
                    L = [[A.product[i][j][k] for j in range(d)]
                         for k in range(d)]
                    assert tqft._matmul(F, H, L) == tqft._matmul(F, L, H)


class TestSewing:
    @pytest.mark.parametrize("maker", [tqft.pd2, tqft.st2])
    @pytest.mark.parametrize("field_", FIELDS, ids=lambda F: F.name)
    def test_composition_law(self, maker, field_):
        A = maker(field_)
        for p, q, r in itertools.product((1, 2), repeat=3):
            for g1, g2 in itertools.product((0, 1), repeat=2):
                ok, diff = tqft.verify_gluing(A, p, q, r, g1, g2)
                assert ok, (p, q, r, g1, g2, diff)

    def test_definitional_identity(self):
        # m then Delta equals one handle: mu(1,2,0) then mu(2,1,0) = mu(1,1,1)
        A = tqft.pd2()
        ok, _ = tqft.verify_gluing(A, 1, 2, 1, 0, 0)
        assert ok

    def test_discrepancy_reported(self):
        F = tqft.Rationals()
        base = tqft.pd2(F)
        coprod = tqft._constants(F, 2, {(0, 0, 1): 1, (0, 1, 0): 1})  # Delta(x)=0
        bent = tqft.FrobeniusAlgebra(
            field_=F, basis=base.basis, product=base.product,
            coproduct=coprod, unit=base.unit)
        ok, diff = tqft.verify_gluing(bent, 1, 2, 1, 1, 0)
        if not ok:
            assert any(any(x != F.zero for x in row) for row in diff)


class TestDiagramCoherence:
    def test_matches_type_level_mu(self):
        A = tqft.pd2()
        d = ch.canonical_gamma0(0, 1, 2)
        assert tqft.operation_from_diagram(d, A).rows() == A.delta_matrix()

    def test_invariance_across_diagrams_of_one_type(self):
        A = tqft.st2()
        d1 = ch.canonical_gamma0(1, 1, 1)
        others = ch.expansions(d1)
        assert others
        m1 = tqft.operation_from_diagram(d1, A)
        for d2 in others:
            assert tqft.operation_from_diagram(d2, A).matrix == m1.matrix

    def test_glue_factorization(self):
        A = tqft.pd2()
        F = A.field_
        c1 = ch.canonical_gamma0(0, 1, 2)
        c2 = ch.canonical_gamma0(0, 2, 2)
        lhs = tqft.operation_from_diagram(ch.glue(c1, c2), A).rows()
        rhs = tqft._matmul(
            F,
            tqft.operation_from_diagram(c2, A).rows(),
            tqft.operation_from_diagram(c1, A).rows(),
        )
        assert lhs == rhs


class TestCounit:
    def test_pd2_has_counit_with_nondegenerate_pairing(self):
        theta, nondeg = tqft.counit_solve(tqft.pd2())
        assert theta == (Fraction(0), Fraction(1))
        assert nondeg

    def test_st2_has_no_counit(self):
        assert tqft.counit_solve(tqft.st2()) is None

    def test_zero_coproduct_has_no_counit(self):
        assert tqft.counit_solve(tqft.zero_coproduct_algebra()) is None


class TestDegrees:
    def test_degree_shift_values(self):
        n = 3
        assert tqft.degree_shift(2, 1, 0, n) == -n      # pair of pants
        assert tqft.degree_shift(0, 1, 0, n) == n       # disk raises by n
        assert tqft.degree_shift(1, 1, 1, 2) == -4

    def test_graded_consistency_of_st2_operations(self):
        A = tqft.st2()
        d = A.dim

        def tensor_degree(index, arity):
            return sum(
                A.degrees[(index // d ** (arity - 1 - i)) % d]
                for i in range(arity)
            )

        for p in (1, 2, 3):
            for q in (1, 2, 3):
                for g in (0, 1, 2):
                    op = tqft.mu(A, p, q, g)
                    assert op.degree_shift == tqft.degree_shift(
                        p, q, g, A.ambient_n)
                    for row, rv in enumerate(op.rows()):
                        for col, value in enumerate(rv):
                            if value != A.field_.zero:
                                assert (tensor_degree(row, q)
                                        - tensor_degree(col, p)
                                        == op.degree_shift)
