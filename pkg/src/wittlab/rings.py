"""Exact arithmetic core: sparse multivariate polynomials over Q, the
rational-function field built on them, and the integer grading lattice
Z^n with its embedding into that field.

Values are immutable after construction and kept in canonical form, so
equality is a plain term-map comparison and everything can be shared
freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian

PARAMETER_SYMBOLS = ("alpha", "beta", "x", "y", "aprime")


class ContextError(ValueError):
    """Invalid session setup, or values from different sessions were mixed."""


class NotDivisibleError(ArithmeticError):
    """Exact polynomial division was requested for a non-multiple."""


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a rational number")


def _grlex(exp):
    # graded lexicographic: total degree first, then lex on the fixed symbol list
    return (sum(exp), exp)


class Context:
    """Symbol table and grading lattice shared by one session.

    ``embedding="symbolic"`` introduces fresh generators g1..gn for the
    lattice, treated as Q-linearly independent, so identities checked with
    them hold for a generic embedding.  ``embedding="integer"`` (rank 1
    only) identifies the lattice with Z itself.
    """

    __slots__ = ("rank", "embedding", "symbols", "index", "nsym",
                 "zero_gamma", "zero_exp", "cache",
                 "poly_zero", "poly_one", "zero", "one")

    def __init__(self, rank: int = 1, embedding: str = "symbolic", extra_symbols=()):
        if not isinstance(rank, int) or rank < 1:
            raise ContextError(f"rank must be a positive integer, got {rank!r}")
        if embedding not in ("symbolic", "integer"):
            raise ContextError(f"unknown embedding mode {embedding!r}")
        if embedding == "integer" and rank != 1:
            raise ContextError("integer embedding requires rank 1: with n >= 2 "
                               "rational lattice generators cannot be Q-linearly independent")
        gens = tuple(f"g{i}" for i in range(1, rank + 1)) if embedding == "symbolic" else ()
        symbols = ("a", "b") + gens + PARAMETER_SYMBOLS + tuple(extra_symbols)
        if len(set(symbols)) != len(symbols):
            raise ContextError(f"duplicate symbols in {symbols!r}")
        self.rank = rank
        self.embedding = embedding
        self.symbols = symbols
        self.index = {s: i for i, s in enumerate(symbols)}
        self.nsym = len(symbols)
        self.zero_gamma = (0,) * rank
        self.zero_exp = (0,) * self.nsym
        self.cache = {}
        self.poly_zero = Poly(self, {}, _canonical=True)
        self.poly_one = Poly(self, {self.zero_exp: Fraction(1)}, _canonical=True)
        self.zero = Scalar._make(self, self.poly_zero, self.poly_one)
        self.one = Scalar._make(self, self.poly_one, self.poly_one)

    # ----- polynomial / scalar constructors -------------------------------

    def const(self, q) -> Poly:
        q = _frac(q)
        if q == 0:
            return self.poly_zero
        return Poly(self, {self.zero_exp: q}, _canonical=True)

    def sym(self, name: str) -> Poly:
        key = ("sym", name)
        p = self.cache.get(key)
        if p is None:
            if name not in self.index:
                raise ContextError(f"unknown symbol {name!r}; session symbols are {self.symbols}")
            exp = [0] * self.nsym
            exp[self.index[name]] = 1
            p = Poly(self, {tuple(exp): Fraction(1)}, _canonical=True)
            self.cache[key] = p
        return p

    def poly(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ctx is not self:
                raise ContextError("polynomial belongs to a different session")
            return value
        return self.const(value)

    def scalar(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise ContextError("scalar belongs to a different session")
            return value
        if isinstance(value, Poly):
            return Scalar(self, value)
        return Scalar(self, self.const(value))

    def sym_scalar(self, name: str) -> Scalar:
        return Scalar(self, self.sym(name))

    # ----- grading lattice --------------------------------------------------

    def check_gamma(self, gamma) -> tuple:
        if isinstance(gamma, int):
            gamma = (gamma,)
        gamma = tuple(gamma)
        if len(gamma) != self.rank or not all(isinstance(c, int) for c in gamma):
            raise ContextError(f"lattice element {gamma!r} does not match rank {self.rank}")
        return gamma

    def embed(self, gamma) -> Poly:
        """Image of a lattice point in the coefficient field (additive)."""
        gamma = self.check_gamma(gamma)
        key = ("embed", gamma)
        p = self.cache.get(key)
        if p is None:
            if self.embedding == "integer":
                p = self.const(gamma[0])
            else:
                p = self.poly_zero
                for i, c in enumerate(gamma):
                    if c:
                        p = p + self.sym(f"g{i + 1}").scale(Fraction(c))
            self.cache[key] = p
        return p

    def embed_scalar(self, gamma) -> Scalar:
        return Scalar(self, self.embed(gamma))

    def gammas(self, box: int):
        """All lattice points with coordinates in [-box, box], in lex order."""
        return _cartesian(range(-box, box + 1), repeat=self.rank)

    def __repr__(self):
        return f"Context(rank={self.rank}, embedding={self.embedding!r})"


# ----- lattice helpers (plain integer tuples) --------------------------------

def gamma_add(g, d):
    return tuple(a + b for a, b in zip(g, d))


def gamma_sub(g, d):
    return tuple(a - b for a, b in zip(g, d))


def gamma_neg(g):
    return tuple(-a for a in g)


def gamma_scale(k, g):
    return tuple(k * a for a in g)


def gamma_compare(g, d) -> int:
    """Lexicographic comparison; total order compatible with addition."""
    if len(g) != len(d):
        raise ContextError(f"rank mismatch: {g!r} vs {d!r}")
    if g == d:
        return 0
    return -1 if g < d else 1


def format_gamma(gamma) -> str:
    if len(gamma) == 1:
        n = gamma[0]
        return str(n) if n >= 0 else f"({n})"
    return "(" + ",".join(str(c) for c in gamma) + ")"


# ----- polynomials ------------------------------------------------------------


class Poly:
    """Sparse polynomial: map from exponent tuples (over the session symbol
    list) to nonzero rational coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict, _canonical: bool = False):
        self.ctx = ctx
        if _canonical:
            self.terms = terms
        else:
            self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    # ----- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ctx.zero_exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if self.is_constant():
            return self.terms[self.ctx.zero_exp]
        raise ValueError(f"{self} is not constant")

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self._symindex(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def _symindex(self, name: str) -> int:
        try:
            return self.ctx.index[name]
        except KeyError:
            raise ContextError(f"unknown symbol {name!r}") from None

    def leading_exp(self) -> tuple:
        return max(self.terms, key=_grlex)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_exp()]

    # ----- arithmetic

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise ContextError("cannot combine polynomials from different sessions")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(self.ctx, res, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, {e: -c for e, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ctx.poly_zero
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = res.get(e, 0) + c1 * c2
                if s:
                    res[e] = s
                else:
                    res.pop(e, None)
        return Poly(self.ctx, res, _canonical=True)

    __rmul__ = __mul__

    def scale(self, q) -> Poly:
        q = _frac(q)
        if q == 0:
            return self.ctx.poly_zero
        return Poly(self.ctx, {e: c * q for e, c in self.terms.items()}, _canonical=True)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = self.ctx.poly_one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> Poly:
        if not self.terms:
            return self
        lc = self.leading_coeff()
        return self if lc == 1 else self.scale(1 / lc)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ctx), tuple(sorted(self.terms.items()))))

    # ----- calculus / substitution

    def derivative(self, name: str) -> Poly:
        i = self._symindex(name)
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                s = res.get(e2, 0) + c * k
                if s:
                    res[e2] = s
                else:
                    res.pop(e2, None)
        return Poly(self.ctx, res, _canonical=True)

    def subst_poly(self, bindings: dict) -> Poly:
        """Substitute polynomials for symbols; untouched symbols pass through."""
        ctx = self.ctx
        idx = {self._symindex(k): ctx.poly(v) for k, v in bindings.items()}
        if not idx or not self.terms:
            return self
        powers = {i: [ctx.poly_one] for i in idx}
        out = ctx.poly_zero
        for e, c in self.terms.items():
            residual = list(e)
            acc = None
            for i, repl in idx.items():
                k = e[i]
                if k:
                    residual[i] = 0
                    cache = powers[i]
                    while len(cache) <= k:
                        cache.append(cache[-1] * repl)
                    acc = cache[k] if acc is None else acc * cache[k]
            base = Poly(ctx, {tuple(residual): c}, _canonical=True)
            out = out + (base if acc is None else base * acc)
        return out

    def substitute(self, bindings: dict) -> "Scalar":
        """Substitute scalars (rational functions allowed) for symbols."""
        ctx = self.ctx
        idx = {self._symindex(k): ctx.scalar(v) for k, v in bindings.items()}
        out = ctx.zero
        powers = {i: [ctx.one] for i in idx}
        for e, c in self.terms.items():
            residual = list(e)
            acc = None
            for i, repl in idx.items():
                k = e[i]
                if k:
                    residual[i] = 0
                    cache = powers[i]
                    while len(cache) <= k:
                        cache.append(cache[-1] * repl)
                    acc = cache[k] if acc is None else acc * cache[k]
            base = Scalar(ctx, Poly(ctx, {tuple(residual): c}, _canonical=True))
            out = out + (base if acc is None else base * acc)
        return out

    # ----- formatting

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_grlex, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(p.ctx.symbols, e) if k
        )
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append((c < 0, body))
    return format_signed_terms(parts)


def format_signed_terms(parts) -> str:
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ----- polynomial division and gcd -------------------------------------------


def poly_div_exact(f: Poly, g: Poly) -> Poly:
    """Quotient f/g when g divides f exactly; raises NotDivisibleError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    if g.is_constant():
        return f.scale(1 / g.constant_value())
    ctx = f.ctx
    gl = g.leading_exp()
    glc = g.terms[gl]
    rem = dict(f.terms)
    quo = {}
    while rem:
        rl = max(rem, key=_grlex)
        diff = tuple(i - j for i, j in zip(rl, gl))
        if any(d < 0 for d in diff):
            raise NotDivisibleError(f"{f} is not divisible by {g}")
        c = rem[rl] / glc
        quo[diff] = c
        for e2, c2 in g.terms.items():
            e = tuple(i + j for i, j in zip(diff, e2))
            s = rem.get(e, 0) - c * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return Poly(ctx, quo, _canonical=True)


def _deg_idx(f: Poly, i: int) -> int:
    return max((e[i] for e in f.terms), default=-1)


def _univar(f: Poly, i: int) -> dict:
    """View f as univariate in symbol i with Poly coefficients (slot i zeroed)."""
    coeffs = {}
    ctx = f.ctx
    for e, c in f.terms.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        d = coeffs.setdefault(k, {})
        d[e2] = d.get(e2, 0) + c
    return {k: Poly(ctx, d, _canonical=True) for k, d in coeffs.items() if d}


def _from_univar(ctx: Context, i: int, coeffs: dict) -> Poly:
    terms = {}
    for k, p in coeffs.items():
        for e, c in p.terms.items():
            e2 = e[:i] + (k,) + e[i + 1:]
            terms[e2] = terms.get(e2, 0) + c
    return Poly(ctx, terms)


def _content(f: Poly, i: int) -> Poly:
    """GCD of the coefficients of f viewed as univariate in symbol i."""
    g = f.ctx.poly_zero
    for p in _univar(f, i).values():
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            return f.ctx.poly_one
    return g


def _prem(f: Poly, g: Poly, i: int) -> Poly:
    """Pseudo-remainder of f by g with respect to symbol i."""
    ctx = f.ctx
    n = _deg_idx(g, i)
    ug = _univar(g, i)
    lcg = ug[n]
    r = f
    while not r.is_zero() and _deg_idx(r, i) >= n:
        m = _deg_idx(r, i)
        ur = _univar(r, i)
        lcr = ur[m]
        shift = {m - n + k: p for k, p in ug.items()}
        r = r * lcg - _from_univar(ctx, i, shift) * lcr
    return r


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (primitive pseudo-remainder sequence)."""
    if f.ctx is not g.ctx:
        raise ContextError("gcd of polynomials from different sessions")
    ctx = f.ctx
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return ctx.poly_one
    if f.terms == g.terms or f.monic().terms == g.monic().terms:
        return f.monic()
    # monomial fast path: gcd is the largest shared monomial
    if len(f.terms) == 1 or len(g.terms) == 1:
        exps = list(f.terms) + list(g.terms)
        shared = tuple(min(e[i] for e in exps) for i in range(ctx.nsym))
        return Poly(ctx, {shared: Fraction(1)}, _canonical=True)
    active = [i for i in range(ctx.nsym)
              if any(e[i] for e in f.terms) or any(e[i] for e in g.terms)]
    i = active[-1]
    df, dg = _deg_idx(f, i), _deg_idx(g, i)
    if df == 0 or dg == 0:
        # one operand is free of the chosen symbol: recurse into the content
        other = g if df == 0 else f
        free = f if df == 0 else g
        return poly_gcd(free, _content(other, i))
    cf, cg = _content(f, i), _content(g, i)
    c = poly_gcd(cf, cg)
    fp = poly_div_exact(f, cf)
    gp = poly_div_exact(g, cg)
    if _deg_idx(fp, i) < _deg_idx(gp, i):
        fp, gp = gp, fp
    while True:
        r = _prem(fp, gp, i)
        if r.is_zero():
            h = gp
            break
        if _deg_idx(r, i) == 0:
            h = ctx.poly_one
            break
        fp, gp = gp, poly_div_exact(r, _content(r, i))
    h = poly_div_exact(h, _content(h, i)) if not h.is_constant() else ctx.poly_one
    return (c * h).monic()


# ----- rational functions ------------------------------------------------------


class Scalar:
    """Rational function num/den in canonical form: gcd-reduced, denominator
    monic under the session monomial order, zero represented as 0/1."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: Context, num: Poly, den: Poly | None = None):
        if den is None:
            den = ctx.poly_one
        if num.ctx is not ctx or den.ctx is not ctx:
            raise ContextError("scalar parts belong to a different session")
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if num.is_zero():
            num, den = ctx.poly_zero, ctx.poly_one
        elif den.is_constant():
            num, den = num.scale(1 / den.constant_value()), ctx.poly_one
        else:
            g = poly_gcd(num, den)
            if not (g.is_constant()):
                num = poly_div_exact(num, g)
                den = poly_div_exact(den, g)
            if den.is_constant():
                num, den = num.scale(1 / den.constant_value()), ctx.poly_one
            else:
                lc = den.leading_coeff()
                if lc != 1:
                    num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.ctx = ctx
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, ctx, num, den):
        # trusted constructor for values already in canonical form
        s = object.__new__(cls)
        s.ctx = ctx
        s.num = num
        s.den = den
        return s

    # ----- queries

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den == self.ctx.poly_one and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if self.den == self.ctx.poly_one:
            return self.num.constant_value()
        raise ValueError(f"{self} is not constant")

    def as_poly(self) -> Poly:
        if self.den == self.ctx.poly_one:
            return self.num
        raise ValueError(f"{self} has a nontrivial denominator")

    # ----- arithmetic

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise ContextError("cannot combine scalars from different sessions")
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.ctx, self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(self.ctx, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.ctx, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.ctx, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self) -> Scalar:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero scalar")
        return Scalar(self.ctx, self.den, self.num)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("scalar powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.ctx is other.ctx and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    # ----- calculus / substitution

    def derivative(self, name: str) -> Scalar:
        n = self.num.derivative(name) * self.den - self.num * self.den.derivative(name)
        return Scalar(self.ctx, n, self.den * self.den)

    def substitute(self, bindings: dict) -> Scalar:
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        return num / den

    # ----- formatting

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({self})"


def format_scalar(s: Scalar) -> str:
    num = format_poly(s.num)
    if s.den == s.ctx.poly_one:
        return num
    if len(s.num.terms) > 1:
        num = f"({num})"
    return f"{num}/({format_poly(s.den)})"
