"""Enveloping algebra of the generalized Witt algebra with basis {e_g} and
bracket [e_m, e_n] = (n - m) e_{m+n}: unique normal forms on sorted words
via bracket rewriting, the graded anti-homomorphism into the skew group
ring sending e_g to (a + b*i(g)) t^g, its homomorphism twin on the rank-1
integer lattice, and a two-sided kernel test."""

from __future__ import annotations

from fractions import Fraction

from .rings import (
    Context, ContextError, Poly, Scalar,
    format_gamma, format_signed_terms, format_scalar,
    gamma_add, gamma_compare,
)
from .skew import SkewElt, skew_mul


class InternalCheckError(RuntimeError):
    """Two independently computed answers that must agree did not."""


def phi_generator(ctx: Context, gamma) -> SkewElt:
    """Image of a Lie generator in the skew group ring: (a + b*i(g)) t^g."""
    gamma = ctx.check_gamma(gamma)
    key = ("phi_gen", gamma)
    u = ctx.cache.get(key)
    if u is None:
        u = SkewElt(ctx, {gamma: ctx.sym("a") + ctx.sym("b") * ctx.embed(gamma)})
        ctx.cache[key] = u
    return u


class UElt:
    """Enveloping-algebra element in normal form: finite map from sorted
    generator words (tuples of lattice points, non-decreasing) to scalars."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict):
        self.ctx = ctx
        out = {}
        for word, c in terms.items():
            word = tuple(ctx.check_gamma(g) for g in word)
            c = ctx.scalar(c)
            if c.is_zero():
                continue
            if any(word[i] > word[i + 1] for i in range(len(word) - 1)):
                raise ValueError(f"word {word!r} is not sorted; use u_mul to build products")
            out[word] = out.get(word, ctx.zero) + c
        self.terms = {w: c for w, c in out.items() if not c.is_zero()}

    # ----- constructors

    @classmethod
    def zero(cls, ctx: Context) -> "UElt":
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx: Context) -> "UElt":
        return cls(ctx, {(): ctx.one})

    @classmethod
    def generator(cls, ctx: Context, gamma) -> "UElt":
        return cls(ctx, {(ctx.check_gamma(gamma),): ctx.one})

    @classmethod
    def _make(cls, ctx, terms):
        u = object.__new__(cls)
        u.ctx = ctx
        u.terms = terms
        return u

    # ----- queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    # ----- arithmetic

    def _check(self, other):
        if isinstance(other, UElt):
            if other.ctx is not self.ctx:
                raise ContextError("cannot combine elements from different sessions")
            return other
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in o.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        return UElt._make(self.ctx, terms)

    def __neg__(self):
        return UElt._make(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def scale(self, coeff) -> "UElt":
        coeff = self.ctx.scalar(coeff)
        if coeff.is_zero():
            return UElt.zero(self.ctx)
        return UElt._make(self.ctx, {w: c * coeff for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UElt):
            return u_mul(self, other)
        if isinstance(other, (int, Fraction, Poly, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        result = UElt.one(self.ctx)
        for _ in range(n):
            result = u_mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, UElt):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ctx), tuple(sorted(self.terms))))

    def __str__(self):
        return format_uelt(self)

    def __repr__(self):
        return f"UElt({self})"


def bracket(ctx: Context, mu, nu) -> UElt:
    """Lie bracket of two generators: (i(nu) - i(mu)) e_{mu+nu}."""
    mu = ctx.check_gamma(mu)
    nu = ctx.check_gamma(nu)
    coeff = ctx.embed(nu) - ctx.embed(mu)
    return UElt(ctx, {(gamma_add(mu, nu),): coeff})


def _find_inversion(word, strategy: str):
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for i in rng:
        if word[i] > word[i + 1]:
            return i
    return None


def _normal_form(ctx: Context, words: dict, strategy: str) -> dict:
    """Rewrite arbitrary words to sorted normal form; each out-of-order
    adjacent pair e_n e_m (n > m) becomes e_m e_n - (i(n) - i(m)) e_{m+n}.
    Terminates because (length, inversion count) drops at every step."""
    out = {}
    stack = list(words.items())
    while stack:
        word, coeff = stack.pop()
        i = _find_inversion(word, strategy)
        if i is None:
            s = out.get(word)
            s = coeff if s is None else s + coeff
            if s.is_zero():
                out.pop(word, None)
            else:
                out[word] = s
            continue
        n, m = word[i], word[i + 1]
        swapped = word[:i] + (m, n) + word[i + 2:]
        merged = word[:i] + (gamma_add(m, n),) + word[i + 2:]
        stack.append((swapped, coeff))
        c2 = coeff * (ctx.embed(m) - ctx.embed(n))
        stack.append((merged, c2))
    return {w: c for w, c in out.items() if not c.is_zero()}


def u_mul(u: UElt, v: UElt, strategy: str = "leftmost") -> UElt:
    """Product in the enveloping algebra, reduced to PBW normal form.

    ``strategy`` picks which out-of-order pair is rewritten first; the result
    must not depend on it (checked by the confluence suite).
    """
    if u.ctx is not v.ctx:
        raise ContextError("cannot multiply elements from different sessions")
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown rewrite strategy {strategy!r}")
    ctx = u.ctx
    words = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            w = w1 + w2
            c = c1 * c2
            s = words.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                words.pop(w, None)
            else:
                words[w] = s
    return UElt._make(ctx, _normal_form(ctx, words, strategy))


def u_product(ctx: Context, gammas) -> UElt:
    """Normal form of a product of generators given by a word of lattice points."""
    out = UElt.one(ctx)
    for g in gammas:
        out = u_mul(out, UElt.generator(ctx, g))
    return out


# ----- the (anti-)homomorphisms into the skew group ring -----------------------


def phi(u: UElt) -> SkewElt:
    """Unital anti-homomorphism into the skew group ring: a sorted word
    e_{g1}...e_{gk} maps to the reversed product of generator images."""
    ctx = u.ctx
    out = SkewElt.zero(ctx)
    for word, c in u.terms.items():
        prod = SkewElt.one(ctx)
        for g in reversed(word):
            prod = skew_mul(prod, phi_generator(ctx, g))
        out = out + prod.scale(c)
    return out


def phi_prime(u: UElt) -> SkewElt:
    """Homomorphism twin of ``phi`` on the rank-1 integer lattice,
    obtained by composing with the sign anti-automorphism e_n -> -e_n;
    sends e_n to (-a - b n) t^n."""
    ctx = u.ctx
    if ctx.embedding != "integer":
        raise ContextError("the homomorphism twin is defined for the rank-1 "
                           "integer lattice only")
    out = SkewElt.zero(ctx)
    for word, c in u.terms.items():
        prod = SkewElt.one(ctx)
        for g in word:
            prod = skew_mul(prod, phi_generator(ctx, g))
        if len(word) % 2:
            prod = -prod
        out = out + prod.scale(c)
    return out


def kernel_test(u: UElt) -> bool:
    """True iff the skew-ring image of u vanishes.  Cross-checked against
    annihilation of the degree-zero basis vector of the weight family with
    symbolic parameters; the two answers agree for every element, so a
    mismatch signals a bug and raises InternalCheckError."""
    from .modules import ModVec, VFamily, act_u

    ctx = u.ctx
    image_zero = phi(u).is_zero()
    fam = VFamily(ctx, ctx.sym_scalar("alpha"), ctx.sym_scalar("beta"))
    acted = act_u(fam, u, ModVec.basis(ctx, ctx.zero_gamma))
    annihilates = acted.is_zero()
    if image_zero != annihilates:
        raise InternalCheckError(
            f"skew image zero: {image_zero}, but annihilates the symbolic "
            f"weight family: {annihilates} for u = {u}")
    return image_zero


# ----- bridge to the three-generator presentation ------------------------------


def tprime_bridge_check(ctx: Context, bound: int):
    """Check the triangle between the enveloping algebra, the three-generator
    ring k<u, v, v^-1, w>/(uv - vu - v^2, uw - wu - wv, vw - wv), and the skew
    group ring on the rank-1 integer lattice.

    The three generators are represented by their skew-ring images
    A_u = (-a - b) t, A_v = t, A_w = b t.  Checks that the three defining
    relations map to zero and that (A_u - (n-1) A_w) A_v^(n-1) agrees with
    the homomorphism twin on e_n for |n| <= bound.  Returns a list of
    result records.
    """
    from .report import CheckResult

    if ctx.embedding != "integer":
        raise ContextError("bridge check requires the rank-1 integer lattice")
    a = ctx.sym("a")
    b = ctx.sym("b")
    A_u = SkewElt(ctx, {(1,): -a - b})
    A_v = SkewElt(ctx, {(1,): ctx.poly_one})
    A_v_inv = SkewElt(ctx, {(-1,): ctx.poly_one})
    A_w = SkewElt(ctx, {(1,): b})
    results = []

    def mul(*els):
        out = SkewElt.one(ctx)
        for e in els:
            out = skew_mul(out, e)
        return out

    relations = [
        ("uv - vu - v^2", mul(A_u, A_v) - mul(A_v, A_u) - mul(A_v, A_v)),
        ("uw - wu - wv", mul(A_u, A_w) - mul(A_w, A_u) - mul(A_w, A_v)),
        ("vw - wv", mul(A_v, A_w) - mul(A_w, A_v)),
    ]
    for name, value in relations:
        results.append(CheckResult(
            suite="tprime-bridge",
            claim=f"relation {name}",
            statement=f"{name} maps to 0 in the skew group ring",
            inputs={"u": "(-a - b)*t^1", "v": "t^1", "w": "b*t^1"},
            computed=str(value),
            expected="0",
            passed=value.is_zero(),
        ))
    for n in range(-bound, bound + 1):
        lead = A_u - A_w.scale(n - 1)
        power = SkewElt.one(ctx)
        step = A_v if n - 1 >= 0 else A_v_inv
        for _ in range(abs(n - 1)):
            power = skew_mul(power, step)
        lhs = skew_mul(lead, power)
        rhs = phi_prime(UElt.generator(ctx, (n,)))
        results.append(CheckResult(
            suite="tprime-bridge",
            claim=f"generator image n={n}",
            statement="(u - (n-1) w) v^(n-1) maps to (-a - b*n) t^n",
            inputs={"n": n},
            computed=str(lhs),
            expected=str(rhs),
            passed=lhs == rhs,
        ))
    return results


# ----- formatting ----------------------------------------------------------------


def format_uelt(u: UElt) -> str:
    if not u.terms:
        return "0"
    parts = []
    for word in sorted(u.terms, key=lambda w: (len(w), w)):
        c = u.terms[word]
        body = "*".join(f"e({','.join(str(k) for k in g)})" for g in word)
        neg = False
        if c.den == u.ctx.poly_one and len(c.num.terms) == 1:
            if c.num.leading_coeff() < 0:
                neg = True
                c = -c
            cs = format_scalar(c)
            if not body:
                parts.append((neg, cs))
                continue
            prefix = "" if cs == "1" else f"{cs}*"
        else:
            cs = f"({format_scalar(c)})"
            if not body:
                parts.append((neg, cs))
                continue
            prefix = f"{cs}*"
        parts.append((neg, f"{prefix}{body}"))
    return format_signed_terms(parts)
