import random
from math import comb

import pytest

from wittlab.rings import Context, ContextError
from wittlab.enveloping import (
    InternalCheckError, UElt, bracket, kernel_test, phi, phi_generator,
    phi_prime, tprime_bridge_check, u_mul, u_product,
)
from wittlab.skew import SkewElt, skew_mul

ZC = Context(rank=1, embedding="integer")
SC2 = Context(rank=2, embedding="symbolic")


def e(ctx, *g):
    return UElt.generator(ctx, g)


def random_uelt(ctx, rng, max_terms=3, max_len=3, span=3):
    u = UElt.zero(ctx)
    for _ in range(rng.randint(1, max_terms)):
        word = [tuple(rng.randint(-span, span) for _ in range(ctx.rank))
                for _ in range(rng.randint(0, max_len))]
        coeff = rng.randint(-3, 3)
        u = u + u_product(ctx, word).scale(coeff)
    return u


class TestBracket:
    def test_basic(self):
        assert bracket(ZC, (1,), (2,)) == e(ZC, 3)

    def test_antisymmetric_diagonal(self):
        assert bracket(ZC, (2,), (2,)).is_zero()

    def test_opposite(self):
        assert bracket(ZC, (1,), (-1,)) == e(ZC, 0).scale(-2)

    def test_antisymmetry_box(self):
        for m in range(-2, 3):
            for n in range(-2, 3):
                assert bracket(ZC, (m,), (n,)) == -bracket(ZC, (n,), (m,))


class TestNormalForm:
    def test_single_rewrite(self):
        got = u_mul(e(ZC, 2), e(ZC, 1))
        expected = UElt(ZC, {((1,), (2,)): 1, ((3,),): -1})
        assert got == expected

    def test_sorted_word_untouched(self):
        got = u_mul(e(ZC, 1), e(ZC, 1))
        assert got == UElt(ZC, {((1,), (1,)): 1})

    def test_longer_rewrite(self):
        # e1 e2 e0 -> e0 e1 e2 - 3 e1 e2, checked by both strategies
        w = u_mul(u_mul(e(ZC, 1), e(ZC, 2)), e(ZC, 0))
        expected = UElt(ZC, {((0,), (1,), (2,)): 1, ((1,), (2,)): -3})
        assert w == expected
        rightmost = u_mul(u_mul(e(ZC, 1), e(ZC, 2), "rightmost"), e(ZC, 0), "rightmost")
        assert rightmost == expected

    def test_defining_relation_normalizes_to_zero(self):
        rel = u_mul(e(ZC, 1), e(ZC, 2)) - u_mul(e(ZC, 2), e(ZC, 1)) - e(ZC, 3)
        assert rel.is_zero()

    def test_unsorted_literal_rejected(self):
        with pytest.raises(ValueError):
            UElt(ZC, {((2,), (1,)): 1})

    def test_confluence_random(self):
        rng = random.Random(7)
        for _ in range(200):
            k = rng.randint(2, 4)
            word = [(rng.randint(-3, 3),) for _ in range(k)]
            left = UElt.one(ZC)
            right = UElt.one(ZC)
            for g in word:
                left = u_mul(left, UElt.generator(ZC, g), "leftmost")
                right = u_mul(right, UElt.generator(ZC, g), "rightmost")
            assert left == right

    def test_confluence_rank2_symbolic(self):
        rng = random.Random(11)
        for _ in range(40):
            word = [(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(3)]
            left = u_product(SC2, word)
            right = UElt.one(SC2)
            for g in word:
                right = u_mul(right, UElt.generator(SC2, g), "rightmost")
            assert left == right

    def test_monomial_counts_match_multisets(self):
        gens = [(-2,), (-1,), (0,), (1,), (2,)]
        for size in range(1, 6):
            G = gens[:size]
            for k in range(5):
                words = {()}
                for _ in range(k):
                    words = {w + (g,) for w in words for g in G}
                monomials = set()
                for w in words:
                    u = u_product(ZC, w)
                    monomials.update(m for m in u.terms if len(m) == k)
                assert len(monomials) == comb(size + k - 1, k)

    def test_associativity_random(self):
        rng = random.Random(3)
        for _ in range(30):
            u = random_uelt(ZC, rng)
            v = random_uelt(ZC, rng)
            w = random_uelt(ZC, rng)
            assert u_mul(u_mul(u, v), w) == u_mul(u, u_mul(v, w))


class TestPhi:
    def test_generator_image(self):
        got = phi(e(ZC, 2))
        assert got == SkewElt(ZC, {(2,): ZC.sym("a") + ZC.sym("b").scale(2)})

    def test_unital(self):
        assert phi(UElt.one(ZC)) == SkewElt.one(ZC)

    def test_quartic_image(self):
        # e1 e3 - e2^2 - e4 maps to b (1 - b) t^4
        u = u_mul(e(ZC, 1), e(ZC, 3)) - u_mul(e(ZC, 2), e(ZC, 2)) - e(ZC, 4)
        b = ZC.sym("b")
        assert phi(u) == SkewElt(ZC, {(4,): b * (1 - b)})

    def test_antihomomorphism_box_integer(self):
        for m in range(-3, 4):
            for n in range(-3, 4):
                lhs = phi(u_mul(e(ZC, m), e(ZC, n)))
                rhs = skew_mul(phi(e(ZC, n)), phi(e(ZC, m)))
                assert lhs == rhs

    def test_antihomomorphism_box_rank2_symbolic(self):
        for m in [(-2, 1), (0, 0), (1, -2), (2, 2), (3, -3)]:
            for n in [(-1, -1), (0, 2), (1, 0), (3, 1)]:
                lhs = phi(u_mul(UElt.generator(SC2, m), UElt.generator(SC2, n)))
                rhs = skew_mul(phi(UElt.generator(SC2, n)), phi(UElt.generator(SC2, m)))
                assert lhs == rhs

    def test_lie_compatibility(self):
        for m in range(-2, 3):
            for n in range(-2, 3):
                lhs = phi(bracket(ZC, (m,), (n,)))
                rhs = (skew_mul(phi(e(ZC, n)), phi(e(ZC, m)))
                       - skew_mul(phi(e(ZC, m)), phi(e(ZC, n))))
                assert lhs == rhs

    def test_well_defined_on_products(self):
        rng = random.Random(5)
        for _ in range(25):
            u = random_uelt(ZC, rng)
            v = random_uelt(ZC, rng)
            assert phi(u_mul(u, v)) == skew_mul(phi(v), phi(u))


class TestPhiPrime:
    def test_generator_image(self):
        got = phi_prime(e(ZC, 3))
        assert got == SkewElt(ZC, {(3,): -ZC.sym("a") - ZC.sym("b").scale(3)})

    def test_unital(self):
        assert phi_prime(UElt.one(ZC)) == SkewElt.one(ZC)

    def test_multiplicative(self):
        lhs = phi_prime(u_mul(e(ZC, 1), e(ZC, 2)))
        rhs = skew_mul(phi_prime(e(ZC, 1)), phi_prime(e(ZC, 2)))
        assert lhs == rhs
        for m in range(-2, 3):
            for n in range(-2, 3):
                lhs = phi_prime(u_mul(e(ZC, m), e(ZC, n)))
                rhs = skew_mul(phi_prime(e(ZC, m)), phi_prime(e(ZC, n)))
                assert lhs == rhs

    def test_requires_integer_lattice(self):
        with pytest.raises(ContextError):
            phi_prime(UElt.generator(SC2, (1, 0)))


class TestBridge:
    def test_relations_and_generator_images(self):
        results = tprime_bridge_check(ZC, 6)
        assert all(r.passed for r in results)
        names = [r.claim for r in results]
        assert "relation uv - vu - v^2" in names
        assert sum(1 for n in names if n.startswith("generator image")) == 13

    def test_vacuous_range(self):
        results = tprime_bridge_check(ZC, 0)
        assert all(r.passed for r in results)
        assert sum(1 for r in results if r.claim.startswith("relation")) == 3


class TestKernel:
    def test_zero_in_kernel(self):
        assert kernel_test(UElt.zero(ZC))

    def test_defining_relation_in_kernel(self):
        rel = u_mul(e(ZC, 1), e(ZC, 2)) - u_mul(e(ZC, 2), e(ZC, 1)) - e(ZC, 3)
        assert kernel_test(rel)

    def test_quartic_not_in_kernel(self):
        u = u_mul(e(ZC, 1), e(ZC, 3)) - u_mul(e(ZC, 2), e(ZC, 2)) - e(ZC, 4)
        assert not kernel_test(u)

    def test_random_coherence(self):
        rng = random.Random(13)
        for _ in range(60):
            u = random_uelt(ZC, rng)
            kernel_test(u)  # raises InternalCheckError on any disagreement
