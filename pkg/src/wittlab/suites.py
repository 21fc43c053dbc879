"""Named verification suites.  Each suite machine-checks one block of the
library's mathematical claims with exact arithmetic and returns result
records; ``run_all`` executes every suite in a fixed order."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .rings import Context, format_gamma, gamma_add
from .skew import AffinePoint, RIdealizer, SkewElt, in_idealizer, skew_mul
from .enveloping import (
    UElt, kernel_test, phi, phi_generator, tprime_bridge_check, u_mul,
    u_product,
)
from .modules import (
    INF, AFamily, ATildeFamily, BFamily, BTildeFamily, DualFamily, ModVec,
    PFamily, QFamily, VFamily, bracket_defect, family_table, iso_check,
)
from .idealizer import (
    beta_membership, beta_witness, ideal_witness, nonfg_left_check,
    nonfg_right_check, p_mu, pmu_check, quotient_beta, saturation_check,
)
from .report import CheckResult, SuiteRun


def _agg(suite, claim, statement, inputs, failures, checks):
    return CheckResult(
        suite=suite, claim=claim, statement=statement, inputs=inputs,
        computed="all identities hold" if not failures
        else f"{len(failures)} failed, first: {failures[0]}",
        expected="all identities hold",
        passed=not failures,
        checks=checks,
    )


def random_uelt(ctx, rng, max_terms=3, max_len=4, span=3):
    u = UElt.zero(ctx)
    for _ in range(rng.randint(1, max_terms)):
        word = [tuple(rng.randint(-span, span) for _ in range(ctx.rank))
                for _ in range(rng.randint(0, max_len))]
        u = u + u_product(ctx, word).scale(rng.randint(-3, 3))
    return u


def _symbolic_families(ctx):
    al, be = ctx.sym_scalar("alpha"), ctx.sym_scalar("beta")
    xx, yy = ctx.sym_scalar("x"), ctx.sym_scalar("y")
    ap = ctx.sym_scalar("aprime")
    return [
        ("weight V(alpha,beta)", VFamily(ctx, al, be)),
        ("projective A[x:y]", AFamily(ctx, xx, yy)),
        ("projective B[x:y]", BFamily(ctx, xx, yy)),
        ("tilde A(aprime)", ATildeFamily(ctx, ap)),
        ("tilde A(inf)", ATildeFamily(ctx, INF)),
        ("tilde B(aprime)", BTildeFamily(ctx, ap)),
        ("tilde B(inf)", BTildeFamily(ctx, INF)),
        ("quotient P[x:y] chart x", PFamily(ctx, xx, yy, chart="x")),
        ("quotient P[x:y] chart y", PFamily(ctx, xx, yy, chart="y")),
        ("quotient Q[x:y] chart x", QFamily(ctx, xx, yy, chart="x")),
        ("quotient Q[x:y] chart y", QFamily(ctx, xx, yy, chart="y")),
        ("dual of V", DualFamily(VFamily(ctx, al, be))),
        ("dual of A", DualFamily(AFamily(ctx, xx, yy))),
        ("dual of B", DualFamily(BFamily(ctx, xx, yy))),
    ]


# ----- suites -------------------------------------------------------------------


def suite_antihom(box=None, samples=None, seed=0, degree_cap=None):
    box = box or 3
    results = []
    for label, ctx in (("rank 1 integer", Context(1, "integer")),
                       ("rank 2 symbolic", Context(2, "symbolic"))):
        failures = []
        checks = 0
        for mu in ctx.gammas(box):
            e_mu = UElt.generator(ctx, mu)
            phi_mu = phi(e_mu)
            for nu in ctx.gammas(box):
                checks += 1
                e_nu = UElt.generator(ctx, nu)
                lhs = phi(u_mul(e_mu, e_nu))
                rhs = skew_mul(phi(e_nu), phi_mu)
                if lhs != rhs:
                    failures.append((mu, nu))
        results.append(_agg(
            "antihom", f"product reversal, {label}",
            "Phi(e_mu * e_nu) == Phi(e_nu) * Phi(e_mu) on the box",
            {"box": box, "lattice": label}, failures, checks))
    return results


def suite_pmu_image(box=None, samples=None, seed=0, degree_cap=None):
    zc = Context(1, "integer")
    results = [pmu_check(zc, (m,)) for m in (1, -1, 2, -2)]
    sc = Context(1, "symbolic")
    r = pmu_check(sc, (1,))
    r.claim += " (symbolic mu)"
    results.append(r)
    return results


def suite_ideal_witness(box=None, samples=None, seed=0, degree_cap=None):
    zc = Context(1, "integer")
    failures = []
    checks = 0
    for nu in range(-4, 5):
        for mu in (1, 2):
            checks += 1
            if not ideal_witness(zc, (nu,), (mu,)).passed:
                failures.append((nu, mu))
    results = [_agg(
        "ideal-witness", "commutator grid",
        "[Phi(e_{nu-4mu}), b(1-b)t^(4mu)] == -4*mu*b*(1-b)*t^nu",
        {"nu": "[-4,4]", "mu": "{1,2}"}, failures, checks)]
    recon = saturation_check(zc, 2, 2, [(k,) for k in range(-2, 3)])
    failures = [r.claim for r in recon if not r.passed]
    results.append(_agg(
        "ideal-witness", "graded reconstruction grid",
        "b(1-b) b^n a^m t^nu rebuilt as explicit generator combinations",
        {"n": "<=2", "m": "<=2", "nu": "[-2,2]"}, failures, len(recon)))
    return results


def suite_nonfg(box=None, samples=None, seed=0, degree_cap=None):
    samples = samples or 200
    zc = Context(1, "integer")
    mu_gens = [(4,), (8,)]
    results = []
    for test_mu in ((5,), (6,)):
        results.append(nonfg_left_check(zc, samples, 4, mu_gens, test_mu,
                                        seed=seed, degree_cap=degree_cap))
        results.append(nonfg_right_check(zc, samples, 4, mu_gens, test_mu,
                                         seed=seed + 1, degree_cap=degree_cap))
    return results


def suite_beta_factors(box=None, samples=None, seed=0, degree_cap=None):
    box = box or 3
    samples = samples or 100
    zc = Context(1, "integer")
    results = []
    for tag in (2, -1, Fraction(1, 2), "symbolic"):
        bval = zc.sym_scalar("beta") if tag == "symbolic" else zc.scalar(tag)
        failures = []
        checks = 0
        for mu in range(-box, box + 1):
            for nu in range(-box, box + 1):
                if mu == 0 or nu == 0:
                    continue
                checks += 1
                if not beta_witness(zc, bval, (mu,), (nu,)).passed:
                    failures.append((mu, nu))
        results.append(_agg(
            "beta-factors", f"pinned product defect, beta={tag}",
            "defect equals beta*mu*nu*(beta-1)*t^(mu+nu)",
            {"beta": str(tag), "box": box}, failures, checks))
    rng = random.Random(seed)
    for which, bv in (("B0", 0), ("B1", 1)):
        failures = []
        for k in range(samples):
            word = [(rng.randint(-3, 3),) for _ in range(rng.randint(1, 4))]
            u = quotient_beta(phi(u_product(zc, word)), bv)
            if not beta_membership(u, which):
                failures.append(word)
        results.append(_agg(
            "beta-factors", f"membership of pinned products in {which}",
            "sampled products of pinned generator images satisfy the "
            "line-quotient membership predicate",
            {"which": which, "samples": samples, "seed": seed},
            failures, samples))
    bsym = zc.sym_scalar("beta")
    failures = []
    for k in range(100):
        u = phi(random_uelt(zc, rng, max_terms=2, max_len=3, span=2))
        v = phi(random_uelt(zc, rng, max_terms=2, max_len=3, span=2))
        lhs = quotient_beta(skew_mul(u, v), bsym)
        rhs = skew_mul(quotient_beta(u, bsym), quotient_beta(v, bsym))
        if lhs != rhs:
            failures.append(k)
    results.append(_agg(
        "beta-factors", "pinning is a ring map",
        "quotient_beta(u v) == quotient_beta(u) quotient_beta(v), symbolic beta",
        {"pairs": 100, "seed": seed}, failures, 100))
    return results


def suite_module_axioms(box=None, samples=None, seed=0, degree_cap=None):
    box = box or 3
    zc = Context(1, "integer")
    results = []
    for label, fam in _symbolic_families(zc):
        failures = []
        checks = 0
        for mu in zc.gammas(box):
            for nu in zc.gammas(box):
                for gamma in zc.gammas(box):
                    checks += 1
                    if not bracket_defect(fam, mu, nu, gamma).is_zero():
                        failures.append((mu, nu, gamma))
        results.append(_agg(
            "module-axioms", label,
            "e_mu e_nu v_g - e_nu e_mu v_g == (nu - mu) e_{mu+nu} v_g on the box",
            {"box": box, "family": label}, failures, checks))
    return results


def suite_pq_tables(box=None, samples=None, seed=0, degree_cap=None):
    box = box or 3
    zc = Context(1, "integer")
    xx, yy = zc.sym_scalar("x"), zc.sym_scalar("y")
    comparisons = [
        ("P chart x vs A", PFamily(zc, xx, yy, chart="x"),
         AFamily(zc, zc.one, yy / xx)),
        ("P chart y vs A", PFamily(zc, xx, yy, chart="y"),
         AFamily(zc, xx / yy, zc.one)),
        ("Q chart x vs B", QFamily(zc, xx, yy, chart="x"),
         BFamily(zc, zc.one, yy / xx)),
        ("Q chart y vs B", QFamily(zc, xx, yy, chart="y"),
         BFamily(zc, xx / yy, zc.one)),
    ]
    results = []
    for label, quot, proj in comparisons:
        failures = []
        checks = 0
        for mu in zc.gammas(box):
            for nu in zc.gammas(box):
                checks += 1
                if quot.coefficient(mu, nu) != proj.coefficient(mu, nu):
                    failures.append((mu, nu))
        results.append(_agg(
            "pq-tables", label,
            "the quotient-family table equals the chart-normalized "
            "projective-family table, symbolic [x:y]",
            {"box": box}, failures, checks))
    return results


def suite_coincidences(box=None, samples=None, seed=0, degree_cap=None):
    box = box or 3
    zc = Context(1, "integer")
    ap = zc.sym_scalar("aprime")
    xx, yy = zc.sym_scalar("x"), zc.sym_scalar("y")
    results = []

    def expect_some(claim, f1, f2, spot=None):
        lam = iso_check(f1, f2, box)
        ok = lam is not None
        detail = "found a graded rescaling"
        if ok and spot is not None:
            for g, val in spot.items():
                if lam[g] != val:
                    ok = False
                    detail = f"rescaling at {g} is {lam[g]}, wanted {val}"
                    break
        if lam is None:
            detail = "no rescaling exists on the box"
        results.append(CheckResult(
            suite="coincidences", claim=claim,
            statement=f"{f1} is isomorphic to {f2} via a graded rescaling",
            inputs={"box": box},
            computed=detail, expected="found a graded rescaling", passed=ok))

    spot_a = {(0,): zc.one}
    spot_a.update({(n,): zc.scalar(n) for n in range(-box, box + 1) if n})
    expect_some("A[1:0] vs V(0,1)", AFamily(zc, 1, 0), VFamily(zc, 0, 1), spot_a)
    spot_b = {(0,): zc.one}
    spot_b.update({(n,): zc.scalar(Fraction(1, n)) for n in range(-box, box + 1) if n})
    expect_some("B[1:0] vs V(0,0)", BFamily(zc, 1, 0), VFamily(zc, 0, 0), spot_b)
    expect_some("tilde A vs A[1+aprime:aprime]",
                ATildeFamily(zc, ap), AFamily(zc, zc.one + ap, ap))
    expect_some("tilde A at infinity vs A[1:1]",
                ATildeFamily(zc, INF), AFamily(zc, 1, 1))
    expect_some("tilde B vs B[1+aprime:aprime]",
                BTildeFamily(zc, ap), BFamily(zc, zc.one + ap, ap))
    expect_some("tilde B at infinity vs B[1:1]",
                BTildeFamily(zc, INF), BFamily(zc, 1, 1))
    expect_some("dual of B[x:y] vs A[x:y]",
                DualFamily(BFamily(zc, xx, yy)), AFamily(zc, xx, yy))

    lam = iso_check(VFamily(zc, 0, 0), VFamily(zc, 0, 1), box)
    results.append(CheckResult(
        suite="coincidences", claim="V(0,0) vs V(0,1) must fail",
        statement="no graded rescaling intertwines the two weight families",
        inputs={"box": box},
        computed="no rescaling" if lam is None else "unexpected rescaling",
        expected="no rescaling", passed=lam is None))
    return results


def suite_tprime_bridge(box=None, samples=None, seed=0, degree_cap=None):
    zc = Context(1, "integer")
    return tprime_bridge_check(zc, 6)


def suite_idealizer_containment(box=None, samples=None, seed=0, degree_cap=None):
    samples = samples or 200
    zc = Context(1, "integer")
    spec = RIdealizer(AffinePoint(zc, 0, 0), AffinePoint(zc, 0, 1))
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        u = random_uelt(zc, rng)
        if not in_idealizer(phi(u), spec):
            failures.append(k)
    return [_agg(
        "idealizer-containment", "algebra image sits in the double idealizer",
        "Phi(u) passes the double-idealizer membership predicate at "
        "((0,0), (0,1)) for random elements",
        {"samples": samples, "word_len": "<=4", "generators": "|g|<=3",
         "seed": seed}, failures, samples)]


def suite_pbw(box=None, samples=None, seed=0, degree_cap=None):
    samples = samples or 200
    zc = Context(1, "integer")
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        word = [(rng.randint(-3, 3),) for _ in range(rng.randint(2, 5))]
        left = UElt.one(zc)
        right = UElt.one(zc)
        for g in word:
            left = u_mul(left, UElt.generator(zc, g), "leftmost")
            right = u_mul(right, UElt.generator(zc, g), "rightmost")
        if left != right:
            failures.append(word)
    results = [_agg(
        "pbw", "rewrite confluence",
        "leftmost-first and rightmost-first rewriting produce identical "
        "normal forms",
        {"products": samples, "seed": seed}, failures, samples)]

    from math import comb
    failures = []
    checks = 0
    gens = [(-2,), (-1,), (0,), (1,), (2,)]
    for size in range(1, 6):
        G = gens[:size]
        for k in range(5):
            words = [()]
            for _ in range(k):
                words = [w + (g,) for w in words for g in G]
            monomials = set()
            for w in words:
                u = u_product(zc, w)
                monomials.update(m for m in u.terms if len(m) == k)
            checks += 1
            if len(monomials) != comb(size + k - 1, k):
                failures.append((size, k))
    results.append(_agg(
        "pbw", "sorted-word counts",
        "the number of length-k normal-form words over a generator set "
        "matches the multiset count",
        {"set_sizes": "<=5", "lengths": "<=4"}, failures, checks))
    return results


def suite_kernel(box=None, samples=None, seed=0, degree_cap=None):
    samples = samples or 200
    zc = Context(1, "integer")
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        u = random_uelt(zc, rng, max_len=3)
        try:
            kernel_test(u)
        except Exception as exc:  # InternalCheckError means disagreement
            failures.append((k, repr(exc)))
    results = [_agg(
        "kernel", "random coherence",
        "vanishing of the skew image agrees with annihilating the symbolic "
        "weight family",
        {"samples": samples, "seed": seed}, failures, samples)]

    rel = (u_mul(UElt.generator(zc, (1,)), UElt.generator(zc, (2,)))
           - u_mul(UElt.generator(zc, (2,)), UElt.generator(zc, (1,)))
           - UElt.generator(zc, (3,)))
    crafted = [
        ("zero element", UElt.zero(zc), True),
        ("defining relation", rel, True),
        ("quartic element", p_mu(zc, (1,)), False),
    ]
    for label, u, expected in crafted:
        got = kernel_test(u)
        results.append(CheckResult(
            suite="kernel", claim=f"crafted case: {label}",
            statement="kernel membership matches the known value",
            inputs={"element": str(u)},
            computed=str(got), expected=str(expected), passed=got == expected))
    return results


SUITES = {
    "antihom": suite_antihom,
    "pmu-image": suite_pmu_image,
    "ideal-witness": suite_ideal_witness,
    "nonfg": suite_nonfg,
    "beta-factors": suite_beta_factors,
    "module-axioms": suite_module_axioms,
    "pq-tables": suite_pq_tables,
    "coincidences": suite_coincidences,
    "tprime-bridge": suite_tprime_bridge,
    "idealizer-containment": suite_idealizer_containment,
    "pbw": suite_pbw,
    "kernel": suite_kernel,
}


def run_suite(name, box=None, samples=None, seed=0, degree_cap=None) -> SuiteRun:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    start = time.perf_counter()
    results = SUITES[name](box=box, samples=samples, seed=seed,
                           degree_cap=degree_cap)
    return SuiteRun(name=name, results=results,
                    duration=time.perf_counter() - start)


def run_all(box=None, samples=None, seed=0, degree_cap=None) -> list:
    return [run_suite(name, box=box, samples=samples, seed=seed,
                      degree_cap=degree_cap)
            for name in SUITES]
