import random
from fractions import Fraction

import pytest

from wittlab.rings import Context, Scalar, gamma_add, gamma_neg
from wittlab.enveloping import UElt, u_mul, u_product
from wittlab.modules import (
    INF, AFamily, ATildeFamily, BFamily, BTildeFamily, DualFamily, ModVec,
    PFamily, PreconditionError, QFamily, TableFamily, VFamily, act, act_u,
    adjoint_act, bracket_defect, classify, family_table, iso_check, pq_reduce,
    shift_check,
)

ZC = Context(rank=1, embedding="integer")


def sym(name):
    return ZC.sym_scalar(name)


def symbolic_families(ctx):
    al, be = ctx.sym_scalar("alpha"), ctx.sym_scalar("beta")
    xx, yy = ctx.sym_scalar("x"), ctx.sym_scalar("y")
    ap = ctx.sym_scalar("aprime")
    return {
        "V": VFamily(ctx, al, be),
        "A": AFamily(ctx, xx, yy),
        "B": BFamily(ctx, xx, yy),
        "Atilde": ATildeFamily(ctx, ap),
        "Atilde_inf": ATildeFamily(ctx, INF),
        "Btilde": BTildeFamily(ctx, ap),
        "Btilde_inf": BTildeFamily(ctx, INF),
        "P_x": PFamily(ctx, xx, yy, chart="x"),
        "P_y": PFamily(ctx, xx, yy, chart="y"),
        "Q_x": QFamily(ctx, xx, yy, chart="x"),
        "Q_y": QFamily(ctx, xx, yy, chart="y"),
        "Dual_V": DualFamily(VFamily(ctx, al, be)),
        "Dual_A": DualFamily(AFamily(ctx, xx, yy)),
        "Dual_B": DualFamily(BFamily(ctx, xx, yy)),
    }


class TestActionTables:
    def test_weight_family(self):
        fam = VFamily(ZC, sym("alpha"), sym("beta"))
        got = act(fam, (2,), ModVec.basis(ZC, (1,)))
        coeff = sym("alpha") + sym("beta") * 2 + 1
        assert got == ModVec(ZC, {(3,): coeff})

    def test_a_kills_opposite(self):
        fam = AFamily(ZC, sym("x"), sym("y"))
        assert act(fam, (2,), ModVec.basis(ZC, (-2,))).is_zero()

    def test_b_kills_zero(self):
        fam = BFamily(ZC, sym("x"), sym("y"))
        assert act(fam, (2,), ModVec.basis(ZC, (0,))).is_zero()

    def test_quotient_family_at_origin(self):
        # chart x: e_mu v_0 = (1 + (y/x) mu) v_mu
        fam = PFamily(ZC, sym("x"), sym("y"), chart="x")
        got = act(fam, (2,), ModVec.basis(ZC, (0,)))
        expected = ZC.one + sym("y") / sym("x") * 2
        assert got == ModVec(ZC, {(2,): expected})

    def test_e0_fixes_weights(self):
        for name, fam in symbolic_families(ZC).items():
            for g in ZC.gammas(2):
                out = act(fam, (0,), ModVec.basis(ZC, g))
                assert set(out.coeffs) <= {g}, name


class TestModuleAxiom:
    @pytest.mark.parametrize("name", sorted(symbolic_families(ZC)))
    def test_bracket_relation_on_box(self, name):
        fam = symbolic_families(ZC)[name]
        for mu in ZC.gammas(2):
            for nu in ZC.gammas(2):
                for gamma in ZC.gammas(2):
                    assert bracket_defect(fam, mu, nu, gamma).is_zero(), (
                        name, mu, nu, gamma)


class TestActU:
    def test_two_step_action(self):
        # acting by the product e_2 e_1 agrees with acting by e_1 first,
        # even though the element is stored in rewritten normal form
        fam = VFamily(ZC, sym("alpha"), sym("beta"))
        u = u_product(ZC, [(2,), (1,)])
        assert u == UElt(ZC, {((1,), (2,)): 1, ((3,),): -1})
        got = act_u(fam, u, ModVec.basis(ZC, (0,)))
        stepwise = act(fam, (2,), act(fam, (1,), ModVec.basis(ZC, (0,))))
        assert got == stepwise

    def test_monomial_action_formula(self):
        fam = VFamily(ZC, sym("alpha"), sym("beta"))
        al, be = sym("alpha"), sym("beta")
        mu, nu = 2, 3
        u = UElt(ZC, {((mu,), (nu,)): 1})  # sorted word e_mu e_nu
        got = act_u(fam, u, ModVec.basis(ZC, (0,)))
        expected = (al + be * nu) * (al + be * mu + nu)
        assert got == ModVec(ZC, {(mu + nu,): expected})

    def test_unit(self):
        fam = BFamily(ZC, 1, 2)
        vec = ModVec(ZC, {(1,): 3, (-2,): Fraction(1, 2)})
        assert act_u(fam, UElt.one(ZC), vec) == vec

    def test_defining_relation_annihilates(self):
        rel = (u_mul(UElt.generator(ZC, (1,)), UElt.generator(ZC, (2,)))
               - u_mul(UElt.generator(ZC, (2,)), UElt.generator(ZC, (1,)))
               - UElt.generator(ZC, (3,)))
        for fam in symbolic_families(ZC).values():
            for g in ZC.gammas(1):
                assert act_u(fam, rel, ModVec.basis(ZC, g)).is_zero()

    def test_associative_with_umul(self):
        rng = random.Random(2)
        fam = VFamily(ZC, sym("alpha"), sym("beta"))
        for _ in range(15):
            w1 = [(rng.randint(-2, 2),) for _ in range(rng.randint(0, 2))]
            w2 = [(rng.randint(-2, 2),) for _ in range(rng.randint(0, 2))]
            u, v = u_product(ZC, w1), u_product(ZC, w2)
            vec = ModVec.basis(ZC, (rng.randint(-2, 2),))
            assert act_u(fam, u_mul(u, v), vec) == act_u(fam, u, act_u(fam, v, vec))


class TestPqReduce:
    def test_linear_reduction(self):
        fam = PFamily(ZC, 1, 2, chart="x")
        f = ZC.sym("a") + ZC.sym("b").scale(3)
        assert pq_reduce(fam, (1,), f) == ZC.scalar(7)

    def test_direction_generator_reduces_to_zero(self):
        fam = PFamily(ZC, sym("x"), sym("y"))
        f = ZC.sym("y") * ZC.sym("a") - ZC.sym("x") * ZC.sym("b")
        assert pq_reduce(fam, (1,), f).is_zero()

    def test_quadratic_generator_reduces_to_zero(self):
        fam = PFamily(ZC, 1, 2, chart="x")
        assert pq_reduce(fam, (1,), ZC.sym("a") ** 2).is_zero()

    def test_precondition_enforced(self):
        fam = PFamily(ZC, 1, 2, chart="x")
        with pytest.raises(PreconditionError):
            pq_reduce(fam, (1,), ZC.sym("a") + 1)

    def test_degree_zero_is_evaluation(self):
        fam = PFamily(ZC, 1, 2, chart="x")
        f = ZC.sym("a") * ZC.sym("b") + ZC.const(5)
        assert pq_reduce(fam, (0,), f) == ZC.scalar(5)

    def test_shifted_base_point(self):
        fam = QFamily(ZC, 1, 2, chart="x")
        f = ZC.sym("a") + (ZC.sym("b") - 1).scale(3)
        assert pq_reduce(fam, (0,), f) == ZC.scalar(7)
        assert pq_reduce(fam, (2,), ZC.sym("a") + 4) == ZC.scalar(4)


class TestQuotientFamiliesMatchProjectiveTables:
    def test_p_tables_both_charts(self):
        xx, yy = sym("x"), sym("y")
        box = 2
        ax = AFamily(ZC, ZC.one, yy / xx)
        px = PFamily(ZC, xx, yy, chart="x")
        assert family_table(px, box) == family_table(ax, box)
        ay = AFamily(ZC, xx / yy, ZC.one)
        py = PFamily(ZC, xx, yy, chart="y")
        assert family_table(py, box) == family_table(ay, box)

    def test_q_tables_both_charts(self):
        xx, yy = sym("x"), sym("y")
        box = 2
        bx = BFamily(ZC, ZC.one, yy / xx)
        qx = QFamily(ZC, xx, yy, chart="x")
        assert family_table(qx, box) == family_table(bx, box)
        by = BFamily(ZC, xx / yy, ZC.one)
        qy = QFamily(ZC, xx, yy, chart="y")
        assert family_table(qy, box) == family_table(by, box)


class TestAdjoint:
    def test_dual_of_b_is_a_up_to_sign_of_parameters(self):
        xx, yy = sym("x"), sym("y")
        dual = DualFamily(BFamily(ZC, xx, yy))
        mirrored = AFamily(ZC, -xx, -yy)
        assert family_table(dual, 2) == family_table(mirrored, 2)
        assert mirrored == AFamily(ZC, xx, yy)  # same projective class

    def test_dual_of_weight_family(self):
        al, be = sym("alpha"), sym("beta")
        dual = DualFamily(VFamily(ZC, al, be))
        flipped = VFamily(ZC, -al, ZC.one - be)
        assert family_table(dual, 2) == family_table(flipped, 2)

    def test_double_dual_identity(self):
        for fam in (VFamily(ZC, sym("alpha"), sym("beta")),
                    AFamily(ZC, sym("x"), sym("y")),
                    BFamily(ZC, sym("x"), sym("y"))):
            dd = DualFamily(DualFamily(fam))
            assert family_table(dd, 2) == family_table(fam, 2)

    def test_adjoint_act_coefficient(self):
        fam = BFamily(ZC, sym("x"), sym("y"))
        got = adjoint_act(fam, (2,), (1,))
        inner = fam.coefficient((2,), (-3,))
        assert got == -inner


class TestSubmoduleStructure:
    def test_a_has_invariant_complement_of_zero(self):
        fam = AFamily(ZC, sym("x"), sym("y"))
        for mu in ZC.gammas(3):
            for nu in ZC.gammas(3):
                if nu == (0,):
                    continue
                out = act(fam, mu, ModVec.basis(ZC, nu))
                assert (0,) not in out.coeffs

    def test_b_kills_degree_zero(self):
        fam = BFamily(ZC, sym("x"), sym("y"))
        for mu in ZC.gammas(3):
            assert act(fam, mu, ModVec.basis(ZC, (0,))).is_zero()


class TestIsoCheck:
    def test_a_10_matches_weight_family(self):
        lam = iso_check(AFamily(ZC, 1, 0), VFamily(ZC, 0, 1), 3)
        assert lam is not None
        assert lam[(0,)] == ZC.one
        for n in range(-3, 4):
            if n:
                assert lam[(n,)] == ZC.scalar(n)

    def test_b_10_matches_weight_family(self):
        lam = iso_check(BFamily(ZC, 1, 0), VFamily(ZC, 0, 0), 3)
        assert lam is not None
        assert lam[(0,)] == ZC.one
        for n in range(-3, 4):
            if n:
                assert lam[(n,)] == ZC.scalar(Fraction(1, n))

    def test_tilde_families(self):
        ap = sym("aprime")
        lam = iso_check(ATildeFamily(ZC, ap), AFamily(ZC, ZC.one + ap, ap), 3)
        assert lam is not None
        lam = iso_check(BTildeFamily(ZC, ap), BFamily(ZC, ZC.one + ap, ap), 3)
        assert lam is not None
        assert iso_check(ATildeFamily(ZC, INF), AFamily(ZC, 1, 1), 3) is not None
        assert iso_check(BTildeFamily(ZC, INF), BFamily(ZC, 1, 1), 3) is not None

    def test_dual_b_matches_a(self):
        xx, yy = sym("x"), sym("y")
        lam = iso_check(DualFamily(BFamily(ZC, xx, yy)), AFamily(ZC, xx, yy), 3)
        assert lam is not None

    def test_distinct_weight_families_inconsistent(self):
        assert iso_check(VFamily(ZC, 0, 0), VFamily(ZC, 0, 1), 2) is None

    def test_box_validation(self):
        with pytest.raises(ValueError):
            iso_check(VFamily(ZC, 0, 0), VFamily(ZC, 0, 0), 0)


class TestShiftCheck:
    def test_symbolic_shift(self):
        fam = VFamily(ZC, sym("alpha"), sym("beta"))
        for nu in ((0,), (1,), (-2,)):
            assert shift_check(fam, nu, 2).passed

    def test_composition(self):
        fam = VFamily(ZC, sym("alpha"), sym("beta"))
        ctx = ZC
        once = VFamily(ctx, fam.alpha + ctx.embed_scalar((1,)), fam.beta)
        twice = VFamily(ctx, once.alpha + ctx.embed_scalar((2,)), once.beta)
        direct = VFamily(ctx, fam.alpha + ctx.embed_scalar((3,)), fam.beta)
        assert family_table(twice, 2) == family_table(direct, 2)


class TestClassify:
    def test_weight_family_parameter_solve(self):
        fam = VFamily(ZC, 2, 3)
        got = classify(ZC, family_table(fam, 2))
        assert got == fam

    def test_rescaled_projective_family(self):
        rng = random.Random(17)
        fam = AFamily(ZC, 1, 1)
        table = family_table(fam, 2)
        lam = {g: ZC.scalar(Fraction(rng.choice([1, 2, 3, -1, -2]),
                                     rng.choice([1, 2]))) for g in ZC.gammas(4)}
        rescaled = {(mu, nu): c * lam[nu] / lam[gamma_add(mu, nu)]
                    for (mu, nu), c in table.items()}
        got = classify(ZC, rescaled)
        assert got == fam

    def test_rescaled_b_family(self):
        rng = random.Random(23)
        fam = BFamily(ZC, 2, 5)
        table = family_table(fam, 2)
        lam = {g: ZC.scalar(rng.choice([1, 2, -1, 3])) for g in ZC.gammas(4)}
        rescaled = {(mu, nu): c * lam[nu] / lam[gamma_add(mu, nu)]
                    for (mu, nu), c in table.items()}
        got = classify(ZC, rescaled)
        assert got == fam

    def test_inconsistent_table(self):
        rng = random.Random(5)
        table = {(mu, nu): ZC.scalar(rng.randint(1, 5))
                 for mu in ZC.gammas(2) for nu in ZC.gammas(2)}
        assert classify(ZC, table) is None

    def test_tie_resolves_to_weight_family(self):
        # the literal table of V(0,1) must classify as V even though it is
        # isomorphic to a projective family
        got = classify(ZC, family_table(VFamily(ZC, 0, 1), 2))
        assert got == VFamily(ZC, 0, 1)


class TestFamilyEquality:
    def test_projective_identification(self):
        assert AFamily(ZC, 1, 2) == AFamily(ZC, 2, 4)
        assert AFamily(ZC, 1, 2) != AFamily(ZC, 2, 1)
        assert AFamily(ZC, 1, 0) != BFamily(ZC, 1, 0)

    def test_rejects_zero_direction(self):
        with pytest.raises(ValueError):
            AFamily(ZC, 0, 0)

    def test_tilde_infinity(self):
        assert ATildeFamily(ZC, INF) == ATildeFamily(ZC, INF)
        assert ATildeFamily(ZC, INF) != ATildeFamily(ZC, 1)
