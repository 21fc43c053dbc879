"""Intermediate-series module families for the generalized Witt algebra:
the weight family V(alpha, beta), the two projective families A[x:y] and
B[x:y], their tilde presentations, restricted duals, and the two families
realized as graded quotients of the skew group ring at a point (P) and at
an infinitely-near point over the shifted base point (Q).  Every family acts
on a graded line bundle with basis v_g indexed by the lattice; products,
an intertwiner solver, a shift checker, and a table classifier are built
on exact scalar arithmetic."""

from __future__ import annotations

from fractions import Fraction

from .rings import (
    Context, ContextError, Poly, Scalar,
    format_gamma, format_scalar, format_signed_terms,
    gamma_add, gamma_neg,
)
from .skew import SkewElt, skew_mul
from .enveloping import UElt, phi_generator


class PreconditionError(ValueError):
    """A representative does not lie in the graded piece it must reduce in."""


class _Infinity:
    """Projective parameter value at infinity for the tilde presentations."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


class ModVec:
    """Finite scalar combination of the graded basis vectors v_g."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Context, coeffs: dict):
        self.ctx = ctx
        out = {}
        for g, c in coeffs.items():
            g = ctx.check_gamma(g)
            c = ctx.scalar(c)
            if not c.is_zero():
                out[g] = out.get(g, ctx.zero) + c if g in out else c
        self.coeffs = {g: c for g, c in out.items() if not c.is_zero()}

    @classmethod
    def basis(cls, ctx: Context, gamma, coeff=1) -> "ModVec":
        return cls(ctx, {ctx.check_gamma(gamma): ctx.scalar(coeff)})

    @classmethod
    def zero(cls, ctx: Context) -> "ModVec":
        return cls(ctx, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, ModVec) or other.ctx is not self.ctx:
            return NotImplemented
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            s = out.get(g)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(g, None)
            else:
                out[g] = s
        v = object.__new__(ModVec)
        v.ctx = self.ctx
        v.coeffs = out
        return v

    def __neg__(self):
        v = object.__new__(ModVec)
        v.ctx = self.ctx
        v.coeffs = {g: -c for g, c in self.coeffs.items()}
        return v

    def __sub__(self, other):
        if not isinstance(other, ModVec):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff) -> "ModVec":
        coeff = self.ctx.scalar(coeff)
        if coeff.is_zero():
            return ModVec.zero(self.ctx)
        v = object.__new__(ModVec)
        v.ctx = self.ctx
        v.coeffs = {g: c * coeff for g, c in self.coeffs.items()}
        return v

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly, Scalar)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModVec):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for g in sorted(self.coeffs):
            c = self.coeffs[g]
            body = f"v({','.join(str(k) for k in g)})"
            neg = False
            if c.den == self.ctx.poly_one and len(c.num.terms) == 1:
                if c.num.leading_coeff() < 0:
                    neg = True
                    c = -c
                cs = format_scalar(c)
                term = body if cs == "1" else f"{cs}*{body}"
            else:
                term = f"({format_scalar(c)})*{body}"
            parts.append((neg, term))
        return format_signed_terms(parts)

    def __repr__(self):
        return f"ModVec({self})"


# ----- family specifications ------------------------------------------------------


class Family:
    """Base for module-family specifications: provides the structure
    coefficient c(mu, nu) in e_mu . v_nu = c(mu, nu) v_{mu+nu}."""

    def coefficient(self, mu, nu) -> Scalar:
        mu = self.ctx.check_gamma(mu)
        nu = self.ctx.check_gamma(nu)
        key = (mu, nu)
        c = self._memo.get(key)
        if c is None:
            c = self._coeff(mu, nu)
            self._memo[key] = c
        return c

    def __repr__(self):
        return str(self)


class VFamily(Family):
    """Weight family: e_mu v_nu = (alpha + beta*mu + nu) v_{mu+nu}."""

    __slots__ = ("ctx", "alpha", "beta", "_memo")

    def __init__(self, ctx: Context, alpha, beta):
        self.ctx = ctx
        self.alpha = ctx.scalar(alpha)
        self.beta = ctx.scalar(beta)
        self._memo = {}

    def _coeff(self, mu, nu):
        return self.alpha + self.beta * self.ctx.embed_scalar(mu) + self.ctx.embed_scalar(nu)

    def __eq__(self, other):
        return (isinstance(other, VFamily) and self.ctx is other.ctx
                and self.alpha == other.alpha and self.beta == other.beta)

    def __hash__(self):
        return hash(("V", self.alpha, self.beta))

    def __str__(self):
        return f"V({self.alpha},{self.beta})"


class _Projective(Family):
    __slots__ = ("ctx", "x", "y", "_memo")

    def __init__(self, ctx: Context, x, y):
        self.ctx = ctx
        self.x = ctx.scalar(x)
        self.y = ctx.scalar(y)
        if self.x.is_zero() and self.y.is_zero():
            raise ValueError("projective parameters [x:y] must not both vanish")
        self._memo = {}

    def __eq__(self, other):
        return (type(other) is type(self) and self.ctx is other.ctx
                and self.x * other.y == self.y * other.x)

    def __hash__(self):
        return hash(type(self).__name__)

    def __str__(self):
        return f"{self._tag}[{self.x}:{self.y}]"


class AFamily(_Projective):
    """Projective family with a simple submodule away from degree zero:
    e_mu v_0 = (x + y*mu) v_mu, e_mu v_{-mu} = 0, otherwise e_mu v_nu = nu v_{mu+nu}."""

    _tag = "A"

    def _coeff(self, mu, nu):
        ctx = self.ctx
        if nu == ctx.zero_gamma and mu != ctx.zero_gamma:
            return self.x + self.y * ctx.embed_scalar(mu)
        if gamma_add(mu, nu) == ctx.zero_gamma:
            return ctx.zero
        return ctx.embed_scalar(nu)


class BFamily(_Projective):
    """Projective family with a one-dimensional trivial submodule at degree
    zero: e_mu v_0 = 0, e_mu v_{-mu} = (x + y*mu) v_0, otherwise
    e_mu v_nu = (mu + nu) v_{mu+nu}."""

    _tag = "B"

    def _coeff(self, mu, nu):
        ctx = self.ctx
        if nu == ctx.zero_gamma:
            return ctx.zero
        if gamma_add(mu, nu) == ctx.zero_gamma:
            return self.x + self.y * ctx.embed_scalar(mu)
        return ctx.embed_scalar(gamma_add(mu, nu))


class _Tilde(Family):
    __slots__ = ("ctx", "aprime", "_memo")

    def __init__(self, ctx: Context, aprime):
        self.ctx = ctx
        self.aprime = aprime if aprime is INF else ctx.scalar(aprime)
        self._memo = {}

    def _special_factor(self, mu) -> Scalar:
        # 1 + (mu + 1) a', read as mu + 1 at a' = infinity
        m = self.ctx.embed_scalar(mu)
        if self.aprime is INF:
            return m + self.ctx.one
        return (m + self.ctx.one) * self.aprime + self.ctx.one

    def __eq__(self, other):
        if type(other) is not type(self) or self.ctx is not other.ctx:
            return False
        if (self.aprime is INF) != (other.aprime is INF):
            return False
        return self.aprime is INF or self.aprime == other.aprime

    def __hash__(self):
        return hash(type(self).__name__)

    def __str__(self):
        return f"{self._tag}({self.aprime})"


class ATildeFamily(_Tilde):
    """Tilde presentation of the A side: e_mu v_0 = mu (1 + (mu+1) a') v_mu,
    e_mu v_nu = (mu + nu) v_{mu+nu} for nu != 0."""

    _tag = "Atilde"

    def _coeff(self, mu, nu):
        ctx = self.ctx
        if nu == ctx.zero_gamma:
            return ctx.embed_scalar(mu) * self._special_factor(mu)
        return ctx.embed_scalar(gamma_add(mu, nu))


class BTildeFamily(_Tilde):
    """Tilde presentation of the B side: e_mu v_{-mu} = -mu (1 + (mu+1) a') v_0,
    e_mu v_nu = nu v_{mu+nu} for nu != -mu."""

    _tag = "Btilde"

    def _coeff(self, mu, nu):
        ctx = self.ctx
        if gamma_add(mu, nu) == ctx.zero_gamma:
            return -ctx.embed_scalar(mu) * self._special_factor(mu)
        return ctx.embed_scalar(nu)


class _QuotientFamily(Family):
    """Common machinery for the families realized as graded quotients of the
    skew group ring: the action of e_mu is right multiplication by its image
    (a + b*mu) t^mu on a degree representative, then reduction in the quotient.
    The chart picks which plane coordinate spans the one-dimensional piece."""

    __slots__ = ("ctx", "x", "y", "chart", "_memo")

    def __init__(self, ctx: Context, x, y, chart=None):
        self.ctx = ctx
        self.x = ctx.scalar(x)
        self.y = ctx.scalar(y)
        if self.x.is_zero() and self.y.is_zero():
            raise ValueError("direction [x:y] must be nonzero")
        if chart is None:
            chart = "x" if not self.x.is_zero() else "y"
        if chart not in ("x", "y"):
            raise ValueError(f"chart must be 'x' or 'y', got {chart!r}")
        if chart == "x" and self.x.is_zero():
            raise ValueError("chart 'x' needs x != 0")
        if chart == "y" and self.y.is_zero():
            raise ValueError("chart 'y' needs y != 0")
        self.chart = chart
        self._memo = {}

    def _coeff(self, mu, nu):
        rep = self._rep(nu)
        prod = skew_mul(rep, phi_generator(self.ctx, mu))
        target = gamma_add(mu, nu)
        return pq_reduce(self, target, prod.component(target))

    def _direction_coefficient(self, f: Scalar, at_beta) -> Scalar:
        """Class of f in the one-dimensional piece (point ideal over the
        direction ideal) at base point (0, at_beta), in the chart basis."""
        ctx = self.ctx
        base = {"a": ctx.zero, "b": ctx.scalar(at_beta)}
        if not f.substitute(base).is_zero():
            raise PreconditionError(
                f"{f} does not vanish at the base point, so it has no class "
                "in the graded piece")
        fa = f.derivative("a").substitute(base)
        fb = f.derivative("b").substitute(base)
        lin = self.x * fa + self.y * fb
        return lin / (self.x if self.chart == "x" else self.y)

    def __eq__(self, other):
        return (type(other) is type(self) and self.ctx is other.ctx
                and self.x * other.y == self.y * other.x)

    def __hash__(self):
        return hash(type(self).__name__)

    def __str__(self):
        return f"{self._tag}[{self.x}:{self.y}]"


class PFamily(_QuotientFamily):
    """Quotient family at the base point (0,0): degree zero is the plane ring
    modulo the point ideal; every other degree is the point ideal modulo the
    direction ideal, spanned by the class of a (chart x) or b (chart y)."""

    _tag = "P"

    def _rep(self, nu):
        ctx = self.ctx
        if nu == ctx.zero_gamma:
            return SkewElt.one(ctx)
        coord = ctx.sym("a") if self.chart == "x" else ctx.sym("b")
        return SkewElt(ctx, {nu: coord})


class QFamily(_QuotientFamily):
    """Quotient family at the shifted base point (0,1): degree zero is the
    point ideal modulo the direction ideal, spanned by the class of a
    (chart x) or b - 1 (chart y); every other degree is the plane ring modulo
    the point ideal, spanned by the class of t^nu."""

    _tag = "Q"

    def _rep(self, nu):
        ctx = self.ctx
        if nu == ctx.zero_gamma:
            coord = ctx.sym("a") if self.chart == "x" else ctx.sym("b") - 1
            return SkewElt.from_poly(ctx, coord)
        return SkewElt.t_power(ctx, nu)


def pq_reduce(family, gamma, f) -> Scalar:
    """Coefficient of the class of a plane polynomial on the degree-gamma
    basis vector of a quotient family."""
    ctx = family.ctx
    f = ctx.scalar(f)
    gamma = ctx.check_gamma(gamma)
    if isinstance(family, PFamily):
        if gamma == ctx.zero_gamma:
            return f.substitute({"a": ctx.zero, "b": ctx.zero})
        return family._direction_coefficient(f, 0)
    if isinstance(family, QFamily):
        if gamma == ctx.zero_gamma:
            return family._direction_coefficient(f, 1)
        return f.substitute({"a": ctx.zero, "b": ctx.one})
    raise TypeError(f"{family!r} is not a quotient family")


class DualFamily(Family):
    """Restricted dual: on the dual basis v'_g = v*_{-g} the action is
    (e_mu f)(m) = -f(e_mu m), so the coefficient at (mu, nu) is minus the
    inner coefficient at (mu, -nu-mu)."""

    __slots__ = ("ctx", "inner", "_memo")

    def __init__(self, inner: Family):
        self.ctx = inner.ctx
        self.inner = inner
        self._memo = {}

    def _coeff(self, mu, nu):
        return -self.inner.coefficient(mu, gamma_neg(gamma_add(nu, mu)))

    def __eq__(self, other):
        return (isinstance(other, DualFamily) and self.ctx is other.ctx
                and self.inner == other.inner)

    def __hash__(self):
        return hash(("Dual", hash(self.inner)))

    def __str__(self):
        return f"Dual({self.inner})"


def adjoint_act(family: Family, mu, gamma) -> Scalar:
    """Coefficient of v'_{gamma+mu} in e_mu v'_gamma for the dual of a family."""
    fam = family if isinstance(family, DualFamily) else DualFamily(family)
    return fam.coefficient(mu, gamma)


# ----- actions ---------------------------------------------------------------------


def act(family: Family, mu, vec: ModVec) -> ModVec:
    """Action of one generator, extended linearly over the vector."""
    ctx = family.ctx
    mu = ctx.check_gamma(mu)
    out = {}
    for nu, c in vec.coeffs.items():
        co = family.coefficient(mu, nu)
        if co.is_zero():
            continue
        tgt = gamma_add(mu, nu)
        s = out.get(tgt)
        s = c * co if s is None else s + c * co
        if s.is_zero():
            out.pop(tgt, None)
        else:
            out[tgt] = s
    v = object.__new__(ModVec)
    v.ctx = ctx
    v.coeffs = out
    return v


def act_u(family: Family, u: UElt, vec: ModVec) -> ModVec:
    """Action of an enveloping-algebra element: for a left module the
    rightmost factor of each word acts first."""
    out = ModVec.zero(family.ctx)
    for word, c in u.terms.items():
        cur = vec
        for g in reversed(word):
            cur = act(family, g, cur)
            if cur.is_zero():
                break
        out = out + cur.scale(c)
    return out


def family_table(family: Family, box: int) -> dict:
    """All structure coefficients over the index box, keyed by (mu, nu)."""
    ctx = family.ctx
    return {(mu, nu): family.coefficient(mu, nu)
            for mu in ctx.gammas(box) for nu in ctx.gammas(box)}


def bracket_defect(family: Family, mu, nu, gamma) -> Scalar:
    """e_mu (e_nu v_g) - e_nu (e_mu v_g) - (nu - mu) e_{mu+nu} v_g, expressed
    as a single coefficient on v_{mu+nu+g}; zero iff the bracket relation
    holds on that triple."""
    ctx = family.ctx
    c = family.coefficient
    lhs = (c(nu, gamma) * c(mu, gamma_add(nu, gamma))
           - c(mu, gamma) * c(nu, gamma_add(mu, gamma)))
    factor = ctx.embed_scalar(nu) - ctx.embed_scalar(mu)
    rhs = factor * c(gamma_add(mu, nu), gamma)
    return lhs - rhs


# ----- intertwiners, shifts, classification -----------------------------------------


def iso_check(f1: Family, f2: Family, box: int):
    """Solve for a graded rescaling v_g -> lam_g v_g intertwining the two
    families on the index box: lam_{mu+nu} c1(mu, nu) = c2(mu, nu) lam_nu for
    all mu, nu with coordinates in [-box, box].  Returns the rescaling map
    (normalized so the first determinable value, anchored at zero, is 1) or
    None when the system is inconsistent.  A successful answer certifies an
    isomorphism on the box only."""
    if f1.ctx is not f2.ctx:
        raise ContextError("families live in different sessions")
    ctx = f1.ctx
    if box < 1:
        raise ValueError("box must be at least 1")
    constraints = []
    for mu in ctx.gammas(box):
        for nu in ctx.gammas(box):
            constraints.append((mu, nu, f1.coefficient(mu, nu), f2.coefficient(mu, nu)))
    lam = {ctx.zero_gamma: ctx.one}
    changed = True
    while changed:
        changed = False
        for mu, nu, c1, c2 in constraints:
            tgt = gamma_add(mu, nu)
            if not c1.is_zero() and nu in lam and tgt not in lam:
                lam[tgt] = c2 * lam[nu] / c1
                changed = True
            elif not c2.is_zero() and tgt in lam and nu not in lam:
                lam[nu] = c1 * lam[tgt] / c2
                changed = True
    indices = {nu for _, nu, _, _ in constraints}
    indices.update(gamma_add(mu, nu) for mu, nu, _, _ in constraints)
    for g in indices:
        lam.setdefault(g, ctx.one)
    if any(v.is_zero() for v in lam.values()):
        return None
    for mu, nu, c1, c2 in constraints:
        if lam[gamma_add(mu, nu)] * c1 != c2 * lam[nu]:
            return None
    return lam


def shift_check(family: VFamily, nu, box: int):
    """The degree shift of the weight family by nu matches the weight family
    with the zeroth parameter translated by i(nu): compares the two
    coefficient tables on the box."""
    from .report import CheckResult

    ctx = family.ctx
    nu = ctx.check_gamma(nu)
    shifted_alpha = family.alpha + ctx.embed_scalar(nu)
    expected = VFamily(ctx, shifted_alpha, family.beta)
    bad = None
    checks = 0
    for mu in ctx.gammas(box):
        for delta in ctx.gammas(box):
            checks += 1
            got = family.coefficient(mu, gamma_add(delta, nu))
            want = expected.coefficient(mu, delta)
            if got != want and bad is None:
                bad = (mu, delta, got, want)
    return CheckResult(
        suite="shift",
        claim=f"weight family shifted by {format_gamma(nu)}",
        statement="coefficients of the shifted family equal those of the "
                  "family with translated parameter",
        inputs={"nu": format_gamma(nu), "box": box,
                "alpha": str(family.alpha), "beta": str(family.beta)},
        computed="all equal" if bad is None else
                 f"mismatch at mu={bad[0]}, delta={bad[1]}: {bad[2]} vs {bad[3]}",
        expected="all equal",
        passed=bad is None,
        checks=checks,
    )


class TableFamily(Family):
    """Adapter presenting a finite coefficient table as a family."""

    __slots__ = ("ctx", "table", "_memo")

    def __init__(self, ctx: Context, table: dict):
        self.ctx = ctx
        self.table = {(ctx.check_gamma(m), ctx.check_gamma(n)): ctx.scalar(c)
                      for (m, n), c in table.items()}
        self._memo = {}

    def _coeff(self, mu, nu):
        try:
            return self.table[(mu, nu)]
        except KeyError:
            raise PreconditionError(f"table has no entry at ({mu}, {nu})") from None

    def __str__(self):
        return f"TableFamily({len(self.table)} entries)"


def _table_box(ctx: Context, table: dict) -> int:
    keys = list(table)
    if not keys:
        raise ValueError("empty table")
    box = max(abs(c) for mu, nu in keys for g in (mu, nu) for c in g)
    if box < 1:
        raise ValueError("table must cover indices beyond zero in each coordinate")
    expected = {(m, n) for m in ctx.gammas(box) for n in ctx.gammas(box)}
    if set(keys) != expected:
        raise ValueError(f"table must be a complete grid over [-{box}, {box}]")
    return box


def _solve_lambda_interior(ctx, table, box, use_target_sum):
    """Propagate the graded rescaling over nonzero indices using the interior
    rows, where the reference coefficient is nu (A side) or mu+nu (B side)."""
    zero = ctx.zero_gamma
    anchor = next(g for g in sorted(ctx.gammas(box)) if g != zero)
    lam = {anchor: ctx.one}
    changed = True
    while changed:
        changed = False
        for mu in ctx.gammas(box):
            for nu in ctx.gammas(box):
                tgt = gamma_add(mu, nu)
                if nu == zero or tgt == zero or max(abs(c) for c in tgt) > box:
                    continue
                t = table[(mu, nu)]
                if t.is_zero():
                    continue
                ref = ctx.embed_scalar(tgt if use_target_sum else nu)
                if nu in lam and tgt not in lam:
                    lam[tgt] = ref * lam[nu] / t
                    changed = True
                elif tgt in lam and nu not in lam and not ref.is_zero():
                    lam[nu] = t * lam[tgt] / ref
                    changed = True
    return lam


def _fit_direction(ctx, samples):
    """Fit s(mu) = X + i(mu) Y through sampled rows; returns (X, Y) or None."""
    if len(samples) < 2:
        return None
    (m1, s1), (m2, s2) = samples[0], samples[-1]
    i1, i2 = ctx.embed_scalar(m1), ctx.embed_scalar(m2)
    if (i1 - i2).is_zero():
        return None
    Y = (s1 - s2) / (i1 - i2)
    X = s1 - i1 * Y
    return X, Y


def classify(ctx: Context, table: dict):
    """Identify a coefficient table as one of the three families.

    The weight family is matched literally (two-parameter solve plus exact
    verification); the two projective families are matched up to a graded
    rescaling recovered from the interior rows and certified by the
    intertwiner solver.  Returns the family or None; None does not certify
    non-membership beyond the box."""
    tf = TableFamily(ctx, table)
    table = tf.table
    box = _table_box(ctx, table)
    zero = ctx.zero_gamma

    # weight family: direct parameter solve, no rescaling
    alpha = table[(zero, zero)]
    muhat = next(g for g in sorted(ctx.gammas(box)) if g != zero)
    beta = (table[(muhat, zero)] - alpha) / ctx.embed_scalar(muhat)
    cand = VFamily(ctx, alpha, beta)
    if all(table[(mu, nu)] == cand.coefficient(mu, nu)
           for mu in ctx.gammas(box) for nu in ctx.gammas(box)):
        return cand

    for use_target_sum, make in ((False, AFamily), (True, BFamily)):
        lam = _solve_lambda_interior(ctx, table, box, use_target_sum)
        samples = []
        for mu in sorted(ctx.gammas(box)):
            if mu == zero:
                continue
            if not use_target_sum:
                # parameter row sits at nu = 0: t(mu,0) lam_mu = (x + y mu) lam_0
                if mu in lam:
                    samples.append((mu, table[(mu, zero)] * lam[mu]))
            else:
                # parameter row sits at mu+nu = 0: t(mu,-mu) lam_0 = (x + y mu) lam_{-mu}
                neg = gamma_neg(mu)
                if neg in lam and not lam[neg].is_zero():
                    samples.append((mu, table[(mu, neg)] / lam[neg]))
        fit = _fit_direction(ctx, samples)
        if fit is None:
            continue
        X, Y = fit
        if X.is_zero() and Y.is_zero():
            continue
        cand = make(ctx, X, Y)
        if iso_check(tf, cand, box) is not None:
            return cand
    return None
