import random
from fractions import Fraction

import pytest

from wittlab.rings import Context, Scalar, gamma_add
from wittlab.skew import SkewElt, skew_mul
from wittlab.enveloping import UElt, phi, phi_generator, u_product
from wittlab.idealizer import (
    SaturationBuilder, beta_membership, beta_witness, conjugate_to_b1,
    eval_combination, format_combination, ideal_witness, nonfg_left_check,
    nonfg_right_check, p_mu, pmu_check, quotient_beta, saturation_check,
    support_reduction,
)

ZC = Context(rank=1, embedding="integer")
SC = Context(rank=1, embedding="symbolic")
SC2 = Context(rank=2, embedding="symbolic")


class TestQuarticElement:
    def test_mu_one(self):
        got = p_mu(ZC, (1,))
        expected = UElt(ZC, {((1,), (3,)): 1, ((2,), (2,)): -1, ((4,),): -1})
        assert got == expected

    def test_mu_two(self):
        got = p_mu(ZC, (2,))
        expected = UElt(ZC, {((2,), (6,)): 1, ((4,), (4,)): -1, ((8,),): -2})
        assert got == expected

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            p_mu(ZC, (0,))

    def test_image_small_mus(self):
        for m in (-2, -1, 1, 2):
            assert pmu_check(ZC, (m,)).passed

    def test_image_symbolic_rank1(self):
        r = pmu_check(SC, (1,))
        assert r.passed
        g1 = SC.sym("g1")
        b = SC.sym("b")
        assert phi(p_mu(SC, (1,))) == SkewElt(SC, {(4,): g1 * g1 * b * (1 - b)})

    def test_image_symbolic_rank2(self):
        r = pmu_check(SC2, (1, 0))
        assert r.passed
        g1 = SC2.sym("g1")
        b = SC2.sym("b")
        assert phi(p_mu(SC2, (1, 0))) == SkewElt(SC2, {(4, 0): g1 * g1 * b * (1 - b)})


class TestIdealWitness:
    def test_degree_zero(self):
        r = ideal_witness(ZC, (0,), (1,))
        assert r.passed
        b = ZC.sym("b")
        assert "-4*b" in r.expected or r.expected.startswith("(")

    def test_box(self):
        for nu in range(-4, 5):
            for mu in (1, 2):
                assert ideal_witness(ZC, (nu,), (mu,)).passed

    def test_commutator_with_a(self):
        # commuting with Phi(e_0) = a at nu = 4mu
        assert ideal_witness(ZC, (4,), (1,)).passed

    def test_symbolic(self):
        assert ideal_witness(SC, (2,), (1,)).passed


class TestSaturation:
    def test_base_case_matches_ideal_witness(self):
        builder = SaturationBuilder(ZC)
        combo = builder.monomial(0, 0, (2,))
        assert eval_combination(ZC, combo) == builder.target(0, 0, (2,))

    def test_left_multiplication_by_a(self):
        builder = SaturationBuilder(ZC)
        combo = builder.monomial(0, 1, (3,))
        assert eval_combination(ZC, combo) == builder.target(0, 1, (3,))

    def test_level_one(self):
        builder = SaturationBuilder(ZC)
        combo = builder.monomial(1, 0, (-1,))
        assert eval_combination(ZC, combo) == builder.target(1, 0, (-1,))

    def test_grid(self):
        results = saturation_check(ZC, 2, 2, [(-2,), (0,), (1,)])
        assert len(results) == 27
        assert all(r.passed for r in results)

    def test_combination_is_auditable(self):
        builder = SaturationBuilder(ZC)
        text = format_combination(builder.monomial(1, 1, (0,)))
        assert "Phi(pmu(1))" in text and "Phi(e(" in text


class TestNonFiniteGenerationFacts:
    def test_left(self):
        r = nonfg_left_check(ZC, 60, 4, [(4,), (8,)], (5,), seed=1)
        assert r.passed

    def test_right(self):
        r = nonfg_right_check(ZC, 60, 4, [(4,), (8,)], (6,), seed=2)
        assert r.passed

    def test_rejects_generator_degree(self):
        with pytest.raises(ValueError):
            nonfg_left_check(ZC, 5, 2, [(4,)], (4,))

    def test_single_factor_example(self):
        # one left factor: the unshifted leading factor vanishes at the origin
        core = SkewElt(ZC, {(4,): ZC.sym("b") * (1 - ZC.sym("b"))})
        elt = skew_mul(phi_generator(ZC, (1,)), core)
        comp = elt.component((5,))
        assert comp.substitute({"a": 0, "b": 0}).is_zero()


class TestClosure:
    def test_products_stay_divisible(self):
        b = ZC.sym("b")
        core = SkewElt(ZC, {(2,): b * (1 - b) * (ZC.sym("a") + 3)})
        for n in range(-3, 4):
            gen = phi_generator(ZC, (n,))
            for prod in (skew_mul(gen, core), skew_mul(core, gen)):
                for c in prod.components.values():
                    from wittlab.rings import poly_div_exact
                    poly_div_exact(c.num, b * (1 - b))  # raises if not divisible


class TestLineQuotients:
    def test_generator_images(self):
        ctx = ZC
        beta = ctx.sym_scalar("beta")
        got = quotient_beta(phi_generator(ctx, (3,)), beta)
        assert got == SkewElt(ctx, {(3,): ctx.sym("a") + (ctx.sym("beta")).scale(3)})
        assert quotient_beta(phi_generator(ctx, (3,)), 0) == SkewElt(ctx, {(3,): ctx.sym("a")})
        # at beta = 1 the image is t^mu a by the commutation rule
        lhs = quotient_beta(phi_generator(ctx, (3,)), 1)
        rhs = skew_mul(SkewElt.t_power(ctx, (3,)), SkewElt.from_poly(ctx, ctx.sym("a")))
        assert lhs == rhs

    def test_ring_map(self):
        rng = random.Random(9)
        beta = ZC.sym_scalar("beta")
        for _ in range(40):
            w1 = [(rng.randint(-2, 2),) for _ in range(rng.randint(1, 3))]
            w2 = [(rng.randint(-2, 2),) for _ in range(rng.randint(1, 3))]
            u = phi(u_product(ZC, w1))
            v = phi(u_product(ZC, w2))
            assert quotient_beta(skew_mul(u, v), beta) == skew_mul(
                quotient_beta(u, beta), quotient_beta(v, beta))

    def test_witness_value(self):
        r = beta_witness(ZC, 2, (1,), (1,))
        assert r.passed
        assert not r.inputs["degenerate"]
        # beta mu nu (beta-1) = 2*1*1*1 = 2
        assert r.expected == str(SkewElt(ZC, {(2,): ZC.const(2)}))

    def test_witness_fraction(self):
        r = beta_witness(ZC, Fraction(1, 2), (1,), (2,))
        assert r.passed
        assert r.expected == str(SkewElt(ZC, {(3,): ZC.const(Fraction(-1, 2))}))

    def test_witness_degenerate(self):
        r = beta_witness(ZC, 0, (1,), (2,))
        assert r.passed and r.inputs["degenerate"]
        r = beta_witness(ZC, 1, (2,), (1,))
        assert r.passed and r.inputs["degenerate"]

    def test_witness_symbolic(self):
        r = beta_witness(ZC, ZC.sym_scalar("beta"), (2,), (3,))
        assert r.passed and not r.inputs["degenerate"]

    def test_witness_rejects_zero(self):
        with pytest.raises(ValueError):
            beta_witness(ZC, 2, (0,), (1,))


class TestBetaMembership:
    def test_examples(self):
        a = ZC.sym("a")
        assert beta_membership(SkewElt(ZC, {(3,): a}), "B0")
        assert not beta_membership(SkewElt(ZC, {(3,): ZC.poly_one}), "B0")
        assert beta_membership(SkewElt(ZC, {(3,): a + 3}), "B1")
        assert not beta_membership(SkewElt(ZC, {(3,): a}), "B1")
        five = SkewElt(ZC, {(0,): ZC.const(5)})
        assert beta_membership(five, "B0") and beta_membership(five, "B1")

    def test_b_degree_guard(self):
        with pytest.raises(ValueError):
            beta_membership(SkewElt(ZC, {(1,): ZC.sym("b")}), "B0")

    def test_sampled_products(self):
        rng = random.Random(21)
        for _ in range(30):
            word = [(rng.randint(-3, 3),) for _ in range(rng.randint(1, 4))]
            u = phi(u_product(ZC, word))
            assert beta_membership(quotient_beta(u, 0), "B0")
            assert beta_membership(quotient_beta(u, 1), "B1")

    def test_conjugation(self):
        rng = random.Random(4)
        a_elt = SkewElt.from_poly(ZC, ZC.sym("a"))
        for _ in range(25):
            word = [(rng.randint(-2, 2),) for _ in range(rng.randint(1, 3))]
            u = quotient_beta(phi(u_product(ZC, word)), 0)
            if u.is_zero():
                continue
            uprime = conjugate_to_b1(u)
            assert skew_mul(u, a_elt) == skew_mul(a_elt, uprime)
            assert beta_membership(uprime, "B1")


class TestSupportReduction:
    def test_kills_chosen_degree(self):
        a = ZC.sym("a")
        u = SkewElt(ZC, {(1,): a + 1, (3,): a * a, (0,): ZC.const(2)})
        red = support_reduction(u, (3,))
        assert (3,) not in red.components
        assert set(red.components) == {(1,), (0,)}

    def test_strictly_shrinks(self):
        u = SkewElt(ZC, {(1,): ZC.poly_one, (2,): ZC.sym("a")})
        red = support_reduction(u, (1,))
        assert len(red.components) < len(u.components)
