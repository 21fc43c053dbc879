"""The skew group ring of the plane coordinate ring by the grading lattice:
finite sums f(a,b)*t^g with t^g * f(a,b) = f(a + g, b) * t^g, together with
point-ideal and idealizer membership predicates and bounded graded ideal
components."""

from __future__ import annotations

import warnings
from fractions import Fraction
from itertools import product as _cartesian

from .rings import (
    Context, ContextError, NotDivisibleError, Poly, Scalar,
    format_gamma, gamma_add, gamma_neg, poly_div_exact, _grlex,
)


class DegreeCapError(ArithmeticError):
    """A graded ideal-component computation exceeded its plane-degree cap."""

    def __init__(self, degree, cap):
        super().__init__(f"component of plane degree {degree} exceeds cap {cap}")
        self.degree = degree
        self.cap = cap


def shift_poly(f: Poly, gamma) -> Poly:
    """The lattice action a -> a + i(gamma) on plane polynomials."""
    ctx = f.ctx
    gamma = ctx.check_gamma(gamma)
    if gamma == ctx.zero_gamma:
        return f
    return f.subst_poly({"a": ctx.sym("a") + ctx.embed(gamma)})


def shift_scalar(s: Scalar, gamma) -> Scalar:
    num = shift_poly(s.num, gamma)
    den = shift_poly(s.den, gamma)
    return Scalar(s.ctx, num, den)


class SkewElt:
    """Element of the skew group ring: finite map from lattice degrees to
    plane polynomials with rational-function coefficients."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx: Context, components: dict):
        self.ctx = ctx
        comps = {}
        for g, c in components.items():
            g = ctx.check_gamma(g)
            c = ctx.scalar(c)
            if not c.is_zero():
                comps[g] = comps.get(g, ctx.zero) + c if g in comps else c
        self.components = {g: c for g, c in comps.items() if not c.is_zero()}

    # ----- constructors

    @classmethod
    def zero(cls, ctx: Context) -> "SkewElt":
        return cls(ctx, {})

    @classmethod
    def one(cls, ctx: Context) -> "SkewElt":
        return cls(ctx, {ctx.zero_gamma: ctx.one})

    @classmethod
    def monomial(cls, ctx: Context, gamma, coeff=1) -> "SkewElt":
        return cls(ctx, {ctx.check_gamma(gamma): ctx.scalar(coeff)})

    @classmethod
    def t_power(cls, ctx: Context, gamma) -> "SkewElt":
        return cls.monomial(ctx, gamma, 1)

    @classmethod
    def from_poly(cls, ctx: Context, f) -> "SkewElt":
        return cls(ctx, {ctx.zero_gamma: ctx.scalar(f)})

    # ----- queries

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def support(self):
        return sorted(self.components)

    def component(self, gamma) -> Scalar:
        gamma = self.ctx.check_gamma(gamma)
        return self.components.get(gamma, self.ctx.zero)

    def plane_degree(self) -> int:
        """Largest combined a,b-degree over all components (-1 for zero)."""
        deg = -1
        for c in self.components.values():
            for e in c.num.terms:
                deg = max(deg, e[0] + e[1])
        return deg

    def b_degree(self) -> int:
        deg = -1
        for c in self.components.values():
            for e in c.num.terms:
                deg = max(deg, e[1])
        return deg

    # ----- arithmetic

    def _check(self, other):
        if isinstance(other, SkewElt):
            if other.ctx is not self.ctx:
                raise ContextError("cannot combine skew elements from different sessions")
            return other
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        comps = dict(self.components)
        for g, c in o.components.items():
            s = comps.get(g)
            s = c if s is None else s + c
            if s.is_zero():
                comps.pop(g, None)
            else:
                comps[g] = s
        out = object.__new__(SkewElt)
        out.ctx = self.ctx
        out.components = comps
        return out

    def __neg__(self):
        out = object.__new__(SkewElt)
        out.ctx = self.ctx
        out.components = {g: -c for g, c in self.components.items()}
        return out

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def scale(self, coeff) -> "SkewElt":
        coeff = self.ctx.scalar(coeff)
        if coeff.is_zero():
            return SkewElt.zero(self.ctx)
        out = object.__new__(SkewElt)
        out.ctx = self.ctx
        out.components = {g: c * coeff for g, c in self.components.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, SkewElt):
            return skew_mul(self, other)
        if isinstance(other, (int, Fraction, Poly, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("skew element powers must be nonnegative integers")
        result = SkewElt.one(self.ctx)
        for _ in range(n):
            result = skew_mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, SkewElt):
            return NotImplemented
        return self.ctx is other.ctx and self.components == other.components

    def __hash__(self):
        return hash((id(self.ctx), tuple(sorted(self.components.items(),
                                                key=lambda kv: kv[0]))))

    def __str__(self):
        return format_skew(self)

    def __repr__(self):
        return f"SkewElt({self})"


def skew_mul(u: SkewElt, v: SkewElt) -> SkewElt:
    """Product in the skew group ring: on monomials,
    (f t^g)(h t^d) = f * h(a + i(g), b) t^(g+d)."""
    if u.ctx is not v.ctx:
        raise ContextError("cannot multiply skew elements from different sessions")
    ctx = u.ctx
    comps = {}
    for g, f in u.components.items():
        for d, h in v.components.items():
            target = gamma_add(g, d)
            c = f * shift_scalar(h, g)
            s = comps.get(target)
            s = c if s is None else s + c
            if s.is_zero():
                comps.pop(target, None)
            else:
                comps[target] = s
    out = object.__new__(SkewElt)
    out.ctx = ctx
    out.components = comps
    return out


def graded_component(u: SkewElt, gamma) -> Scalar:
    return u.component(gamma)


def format_skew(u: SkewElt) -> str:
    from .rings import format_scalar, format_signed_terms
    if not u.components:
        return "0"
    parts = []
    for g in sorted(u.components):
        c = u.components[g]
        tpart = f"t^{format_gamma(g)}"
        neg = False
        if c.den == u.ctx.poly_one and len(c.num.terms) == 1:
            ((e, q),) = c.num.terms.items()
            if q < 0:
                neg = True
                c = -c
            body = format_scalar(c)
            if body == "1":
                parts.append((neg, tpart))
                continue
        else:
            body = f"({format_scalar(c)})"
        parts.append((neg, f"{body}*{tpart}"))
    return format_signed_terms(parts)


# ----- points, ideals, idealizers ---------------------------------------------


class AffinePoint:
    """Plane point (alpha, beta); names the maximal ideal (a-alpha, b-beta)."""

    __slots__ = ("ctx", "alpha", "beta")

    def __init__(self, ctx: Context, alpha, beta):
        self.ctx = ctx
        self.alpha = ctx.scalar(alpha)
        self.beta = ctx.scalar(beta)

    def __eq__(self, other):
        if not isinstance(other, AffinePoint):
            return NotImplemented
        return (self.ctx is other.ctx and self.alpha == other.alpha
                and self.beta == other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"AffinePoint({self.alpha}, {self.beta})"


class InfNearPoint:
    """A direction [x:y] at a plane point (alpha, beta); names the ideal
    (y(a-alpha) - x(b-beta), (a-alpha)^2, (a-alpha)(b-beta), (b-beta)^2)."""

    __slots__ = ("ctx", "alpha", "beta", "x", "y")

    def __init__(self, ctx: Context, alpha, beta, x, y):
        self.ctx = ctx
        self.alpha = ctx.scalar(alpha)
        self.beta = ctx.scalar(beta)
        self.x = ctx.scalar(x)
        self.y = ctx.scalar(y)
        if self.x.is_zero() and self.y.is_zero():
            raise ValueError("direction [x:y] must be nonzero")

    @property
    def base(self) -> AffinePoint:
        return AffinePoint(self.ctx, self.alpha, self.beta)

    def __eq__(self, other):
        if not isinstance(other, InfNearPoint):
            return NotImplemented
        return (self.ctx is other.ctx and self.alpha == other.alpha
                and self.beta == other.beta
                and self.x * other.y == self.y * other.x)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"InfNearPoint(({self.alpha}, {self.beta}); [{self.x}:{self.y}])"


def _eval_at(c: Scalar, alpha: Scalar, beta: Scalar) -> Scalar:
    return c.substitute({"a": alpha, "b": beta})


def poly_in_point_ideal(f, p) -> bool:
    """Membership of a plane polynomial (rational-function coefficients
    allowed) in the ideal named by an affine or infinitely-near point.

    For a direction [x:y] at (alpha, beta) the criterion is vanishing at the
    point together with x*df/da + y*df/db = 0 there; equivalent to expanding
    f over the four ideal generators.
    """
    ctx = p.ctx
    f = ctx.scalar(f)
    if not _eval_at(f, p.alpha, p.beta).is_zero():
        return False
    if isinstance(p, AffinePoint):
        return True
    fa = _eval_at(f.derivative("a"), p.alpha, p.beta)
    fb = _eval_at(f.derivative("b"), p.alpha, p.beta)
    return (p.x * fa + p.y * fb).is_zero()


def in_right_point_ideal(u: SkewElt, p) -> bool:
    """Membership in I(p)T: every graded component lies in I(p)."""
    return all(poly_in_point_ideal(c, p) for c in u.components.values())


def in_left_point_ideal(u: SkewElt, p: AffinePoint) -> bool:
    """Membership in TI(p): the degree-g component vanishes at
    (alpha - i(g), beta), because t^g (a - alpha) = (a + i(g) - alpha) t^g."""
    ctx = u.ctx
    for g, c in u.components.items():
        shifted_alpha = p.alpha - ctx.embed_scalar(g)
        if not _eval_at(c, shifted_alpha, p.beta).is_zero():
            return False
    return True


class SIdealizer:
    """Largest subring in which the right ideal of a point becomes two-sided:
    scalars plus I(p0)T."""

    __slots__ = ("p0",)

    def __init__(self, p0: AffinePoint):
        self.p0 = p0

    def __repr__(self):
        return f"SIdealizer({self.p0!r})"


class RIdealizer:
    """Double idealizer: plane polynomials plus the intersection of the
    right ideal at p0 with the left ideal at p1."""

    __slots__ = ("p0", "p1")

    def __init__(self, p0: AffinePoint, p1: AffinePoint):
        if p0 == p1:
            raise ValueError("the two base points must be distinct")
        self.p0 = p0
        self.p1 = p1
        if _same_orbit(p0, p1):
            warnings.warn(
                "base points lie on the same lattice orbit; membership is "
                "still well defined but the module classification over this "
                "subring assumes distinct orbits", stacklevel=2)

    def __repr__(self):
        return f"RIdealizer({self.p0!r}, {self.p1!r})"


def _same_orbit(p0: AffinePoint, p1: AffinePoint) -> bool:
    # orbit of (alpha, beta) is (alpha + i(lattice), beta)
    if p0.beta != p1.beta:
        return False
    diff = p0.alpha - p1.alpha
    ctx = p0.ctx
    if ctx.embedding == "integer":
        return diff.is_constant() and diff.constant_value().denominator == 1
    # symbolic mode: difference must be an integer combination of generators
    if diff.den != ctx.poly_one:
        return False
    gen_idx = [ctx.index[f"g{i}"] for i in range(1, ctx.rank + 1)]
    for e, c in diff.num.terms.items():
        if sum(e) != 1 or not any(e[i] for i in gen_idx) or c.denominator != 1:
            return False
    return True


def in_idealizer(u: SkewElt, spec) -> bool:
    """Membership in an idealizer subring.  The degree-zero component is
    unconstrained (scalars plus a maximal ideal fill the whole plane ring);
    every other component must lie in I(p0), and for the double idealizer
    also satisfy the left condition at p1."""
    ctx = u.ctx
    zero_g = ctx.zero_gamma
    if isinstance(spec, SIdealizer):
        return all(poly_in_point_ideal(c, spec.p0)
                   for g, c in u.components.items() if g != zero_g)
    if isinstance(spec, RIdealizer):
        for g, c in u.components.items():
            if g == zero_g:
                continue
            if not poly_in_point_ideal(c, spec.p0):
                return False
            shifted_alpha = spec.p1.alpha - ctx.embed_scalar(g)
            if not _eval_at(c, shifted_alpha, spec.p1.beta).is_zero():
                return False
        return True
    raise TypeError(f"not an idealizer spec: {spec!r}")


# ----- linear algebra over the scalar field ------------------------------------


class LinearBasis:
    """Incremental row echelon over the scalar field, used to deduplicate
    spanning sets by linear independence."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.rows = []  # (pivot_key, row dict key->Scalar with row[pivot] = 1)

    def _reduce(self, vec: dict) -> dict:
        vec = {k: v for k, v in vec.items() if not v.is_zero()}
        for pivot, row in self.rows:
            c = vec.get(pivot)
            if c is None or c.is_zero():
                continue
            for k, v in row.items():
                s = vec.get(k, self.ctx.zero) - c * v
                if s.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = s
        return vec

    def contains(self, vec: dict) -> bool:
        return not self._reduce(dict(vec))

    def add(self, vec: dict) -> bool:
        """Insert a vector; returns True when it was independent."""
        vec = self._reduce(dict(vec))
        if not vec:
            return False
        pivot = max(vec)
        inv = vec[pivot].inverse()
        row = {k: v * inv for k, v in vec.items()}
        # keep the basis fully reduced: clear the new pivot from old rows
        for i, (p, r) in enumerate(self.rows):
            c = r.get(pivot)
            if c is None or c.is_zero():
                continue
            nr = dict(r)
            for k, v in row.items():
                s = nr.get(k, self.ctx.zero) - c * v
                if s.is_zero():
                    nr.pop(k, None)
                else:
                    nr[k] = s
            self.rows[i] = (p, nr)
        self.rows.append((pivot, row))
        return True

    def __len__(self):
        return len(self.rows)


def plane_vector(c: Scalar) -> dict:
    """Decompose a plane polynomial with parameter coefficients into a vector
    keyed by (a-degree, b-degree) with scalar entries."""
    ctx = c.ctx
    groups = {}
    for e, q in c.num.terms.items():
        key = (e[0], e[1])
        residual = (0, 0) + e[2:]
        d = groups.setdefault(key, {})
        d[residual] = d.get(residual, 0) + q
    den = c.den
    return {k: Scalar(ctx, Poly(ctx, d), den) for k, d in groups.items()}


# ----- bounded graded ideal components ------------------------------------------


def ideal_component(generators, multipliers, side, degree, word_bound,
                    degree_cap=None):
    """Spanning set for the degree-g component of the (left/right/two-sided)
    ideal generated by ``generators`` inside the multiplier-generated subring,
    using products with at most ``word_bound`` multiplier factors.

    Returns linearly independent plane polynomials (denominators cleared).
    Raises DegreeCapError when a computed component exceeds the plane-degree
    cap; the default cap is max generator degree + word bound.
    """
    if side not in ("left", "right", "two_sided"):
        raise ValueError(f"unknown side {side!r}")
    if word_bound < 0:
        raise ValueError("word bound must be nonnegative")
    generators = list(generators)
    multipliers = list(multipliers)
    if not generators:
        return []
    ctx = generators[0].ctx
    degree = ctx.check_gamma(degree)
    if degree_cap is None:
        degree_cap = max(g.plane_degree() for g in generators) + word_bound
    basis = LinearBasis(ctx)
    out = []
    for gen in generators:
        for length in range(word_bound + 1):
            for seq in _cartesian(multipliers, repeat=length):
                if side == "left":
                    splits = (length,)
                elif side == "right":
                    splits = (0,)
                else:
                    splits = range(length + 1)
                for cut in splits:
                    prod = SkewElt.one(ctx)
                    for m in seq[:cut]:
                        prod = skew_mul(prod, m)
                    prod = skew_mul(prod, gen)
                    for m in seq[cut:]:
                        prod = skew_mul(prod, m)
                    comp = prod.component(degree)
                    if comp.is_zero():
                        continue
                    comp_deg = max(e[0] + e[1] for e in comp.num.terms)
                    if comp_deg > degree_cap:
                        raise DegreeCapError(comp_deg, degree_cap)
                    if basis.add(plane_vector(comp)):
                        out.append(_clear_denominator(comp))
    return out


def _clear_denominator(c: Scalar) -> Poly:
    # scaling does not change the span; normalize leading coefficient to 1
    return c.num.monic()
