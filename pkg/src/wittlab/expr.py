"""Expression language for the command line: tokenizer and recursive-descent
parser with positioned diagnostics, an evaluator over exact values (scalars,
enveloping-algebra elements, skew elements, module vectors), the family
grammar, and the action-table text format."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import Context, ContextError, Poly, Scalar
from .skew import SkewElt
from .enveloping import UElt, phi, phi_prime, u_mul
from .modules import (
    INF, AFamily, ATildeFamily, BFamily, BTildeFamily, DualFamily, Family,
    ModVec, PFamily, QFamily, VFamily,
)
from .idealizer import p_mu


class ParseError(ValueError):
    """Lexical or syntax error with a byte offset into the source text."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        suffix = f", expected {' or '.join(expected)}" if expected else ""
        super().__init__(f"{message} at offset {offset}{suffix}")


class EvalError(ValueError):
    """The expression parsed but mixes values that cannot be combined."""


RESERVED = {"e", "v", "t", "a", "b", "Phi", "PhiPrime", "pmu", "inf"}
FAMILY_HEADS = {"V", "A", "B", "Atilde", "Btilde", "P", "Px", "Py",
                "Q", "Qx", "Qy", "Dual"}
_PUNCT = "+-*/^(),[]:"


def tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(("OP", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", "", n))
    return tokens


# ----- abstract syntax ------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Gen:
    gamma: tuple


@dataclass(frozen=True)
class VBasis:
    gamma: tuple


@dataclass(frozen=True)
class TPow:
    gamma: tuple


@dataclass(frozen=True)
class PlaneSym:
    name: str


@dataclass(frozen=True)
class PmuCall:
    gamma: tuple


@dataclass(frozen=True)
class Call:
    head: str
    arg: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


class Parser:
    """Recursive descent with the standard precedence tower:
    ^ binds tightest, then unary minus, then * and /, then + and -.
    Products require an explicit *; there is no juxtaposition."""

    def __init__(self, ctx: Context, text: str):
        self.ctx = ctx
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # token plumbing

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, text, off = self.peek()
        if kind == "OP" and text == op:
            return self.advance()
        raise ParseError(f"unexpected {text!r}" if kind != "EOF" else "unexpected end of input",
                         off, expected=(repr(op),))

    def at_op(self, *ops):
        kind, text, _ = self.peek()
        return kind == "OP" and text in ops

    # entry points

    def parse_expression(self):
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "EOF":
            raise ParseError(f"unexpected {text!r}", off, expected=("end of input",))
        return node

    def parse_family_spec(self):
        fam = self.family()
        kind, text, off = self.peek()
        if kind != "EOF":
            raise ParseError(f"unexpected {text!r}", off, expected=("end of input",))
        return fam

    # expression grammar

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance()[1]
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.advance()[1]
            node = Bin(op, node, self.unary())
        return node

    def unary(self):
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.at_op("^"):
            _, _, off = self.advance()
            kind, text, off2 = self.peek()
            if kind != "INT":
                raise ParseError("power needs a nonnegative integer", off2,
                                 expected=("integer",))
            self.advance()
            node = Pow(node, int(text))
        return node

    def signed_int(self):
        neg = False
        if self.at_op("-"):
            self.advance()
            neg = True
        kind, text, off = self.peek()
        if kind != "INT":
            raise ParseError("expected an integer" if kind != "EOF"
                             else "unexpected end of input", off,
                             expected=("integer",))
        self.advance()
        return -int(text) if neg else int(text)

    def gamma_tuple(self, parens_required=True):
        self.expect_op("(")
        coords = [self.signed_int()]
        while self.at_op(","):
            self.advance()
            coords.append(self.signed_int())
        self.expect_op(")")
        return self._check_rank(tuple(coords))

    def _check_rank(self, gamma):
        if len(gamma) != self.ctx.rank:
            raise ParseError(
                f"lattice tuple {gamma} does not match session rank {self.ctx.rank}",
                self.tokens[max(self.i - 1, 0)][2])
        return gamma

    def t_exponent(self):
        # integer, negative integer in parens, or a full tuple
        kind, text, off = self.peek()
        if kind == "INT":
            self.advance()
            return self._check_rank((int(text),))
        if self.at_op("("):
            self.advance()
            coords = [self.signed_int()]
            while self.at_op(","):
                self.advance()
                coords.append(self.signed_int())
            self.expect_op(")")
            return self._check_rank(tuple(coords))
        raise ParseError("exponent of t must be an integer or tuple", off,
                         expected=("integer", "("))

    def atom(self):
        kind, text, off = self.peek()
        if kind == "INT":
            self.advance()
            return Lit(int(text))
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "NAME":
            self.advance()
            if text == "e":
                return Gen(self.gamma_tuple())
            if text == "v":
                return VBasis(self.gamma_tuple())
            if text == "pmu":
                return PmuCall(self.gamma_tuple())
            if text == "t":
                if self.at_op("^"):
                    self.advance()
                    return TPow(self.t_exponent())
                if self.ctx.rank != 1:
                    raise ParseError("bare t needs rank 1; write t^(tuple)", off)
                return TPow((1,))
            if text in ("a", "b"):
                return PlaneSym(text)
            if text in ("Phi", "PhiPrime"):
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            if text in self.ctx.index and text not in RESERVED:
                return Sym(text)
            raise ParseError(f"unknown symbol {text!r}", off,
                             expected=tuple(s for s in self.ctx.symbols
                                            if s not in ("a", "b")))
        raise ParseError("unexpected end of input" if kind == "EOF"
                         else f"unexpected {text!r}", off,
                         expected=("integer", "symbol", "("))

    # family grammar

    def _scalar_arg(self):
        node = self.expr()
        value = eval_ast(self.ctx, node)
        return as_scalar(self.ctx, value)

    def _pair(self, open_op, sep, close_op):
        self.expect_op(open_op)
        first = self._scalar_arg()
        self.expect_op(sep)
        second = self._scalar_arg()
        self.expect_op(close_op)
        return first, second

    def family(self) -> Family:
        kind, text, off = self.peek()
        if kind != "NAME" or text not in FAMILY_HEADS:
            raise ParseError("expected a family head", off,
                             expected=tuple(sorted(FAMILY_HEADS)))
        self.advance()
        ctx = self.ctx
        if text == "V":
            al, be = self._pair("(", ",", ")")
            return VFamily(ctx, al, be)
        if text in ("A", "B"):
            xx, yy = self._pair("[", ":", "]")
            return (AFamily if text == "A" else BFamily)(ctx, xx, yy)
        if text in ("Atilde", "Btilde"):
            self.expect_op("(")
            k2, t2, _ = self.peek()
            if k2 == "NAME" and t2 == "inf":
                self.advance()
                arg = INF
            else:
                arg = self._scalar_arg()
            self.expect_op(")")
            return (ATildeFamily if text == "Atilde" else BTildeFamily)(ctx, arg)
        if text in ("P", "Px", "Py", "Q", "Qx", "Qy"):
            xx, yy = self._pair("[", ":", "]")
            chart = {"x": "x", "y": "y"}.get(text[-1]) if len(text) == 2 else None
            cls = PFamily if text[0] == "P" else QFamily
            return cls(ctx, xx, yy, chart=chart)
        if text == "Dual":
            self.expect_op("(")
            inner = self.family()
            self.expect_op(")")
            return DualFamily(inner)
        raise ParseError(f"unknown family {text!r}", off)


# ----- evaluation -------------------------------------------------------------------


def as_scalar(ctx: Context, value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, SkewElt):
        comp = value.components
        if not comp:
            return ctx.zero
        if set(comp) == {ctx.zero_gamma}:
            c = comp[ctx.zero_gamma]
            if c.num.degree_in("a") == 0 and c.num.degree_in("b") == 0:
                return c
    raise EvalError(f"expected a scalar value, got {value}")


def _promote(ctx, left, right):
    """Lift scalars into the algebra the other operand lives in."""
    if isinstance(left, Scalar) and isinstance(right, UElt):
        return UElt.one(ctx).scale(left), right
    if isinstance(right, Scalar) and isinstance(left, UElt):
        return left, UElt.one(ctx).scale(right)
    if isinstance(left, Scalar) and isinstance(right, SkewElt):
        return SkewElt.one(ctx).scale(left), right
    if isinstance(right, Scalar) and isinstance(left, SkewElt):
        return left, SkewElt.one(ctx).scale(right)
    return left, right


def eval_ast(ctx: Context, node):
    if isinstance(node, Lit):
        return ctx.scalar(node.value)
    if isinstance(node, Sym):
        return ctx.sym_scalar(node.name)
    if isinstance(node, Gen):
        return UElt.generator(ctx, node.gamma)
    if isinstance(node, VBasis):
        return ModVec.basis(ctx, node.gamma)
    if isinstance(node, TPow):
        return SkewElt.t_power(ctx, node.gamma)
    if isinstance(node, PlaneSym):
        return SkewElt.from_poly(ctx, ctx.sym(node.name))
    if isinstance(node, PmuCall):
        return p_mu(ctx, node.gamma)
    if isinstance(node, Call):
        value = eval_ast(ctx, node.arg)
        if not isinstance(value, UElt):
            value_s = as_scalar(ctx, value) if not isinstance(value, ModVec) else None
            if value_s is None:
                raise EvalError(f"{node.head} needs an enveloping-algebra element")
            value = UElt.one(ctx).scale(value_s)
        return phi(value) if node.head == "Phi" else phi_prime(value)
    if isinstance(node, Neg):
        return -eval_ast(ctx, node.arg)
    if isinstance(node, Pow):
        base = eval_ast(ctx, node.base)
        return base ** node.exponent
    if isinstance(node, Bin):
        left = eval_ast(ctx, node.left)
        right = eval_ast(ctx, node.right)
        if node.op in "+-":
            left, right = _promote(ctx, left, right)
            if type(left) is not type(right):
                raise EvalError(
                    f"cannot {'add' if node.op == '+' else 'subtract'} "
                    f"{type(left).__name__} and {type(right).__name__}")
            return left + right if node.op == "+" else left - right
        if node.op == "*":
            if isinstance(left, Scalar):
                if isinstance(right, Scalar):
                    return left * right
                return right.scale(left)
            if isinstance(right, Scalar):
                return left.scale(right)
            if isinstance(left, UElt) and isinstance(right, UElt):
                return u_mul(left, right)
            if isinstance(left, SkewElt) and isinstance(right, SkewElt):
                return left * right
            raise EvalError(f"cannot multiply {type(left).__name__} "
                            f"and {type(right).__name__}")
        if node.op == "/":
            divisor = as_scalar(ctx, right) if not isinstance(right, Scalar) else right
            if divisor.is_zero():
                raise EvalError("division by zero")
            if isinstance(left, Scalar):
                return left / divisor
            return left.scale(divisor.inverse())
    raise EvalError(f"cannot evaluate {node!r}")


def evaluate(ctx: Context, text: str):
    return eval_ast(ctx, Parser(ctx, text).parse_expression())


def parse_family(ctx: Context, text: str) -> Family:
    return Parser(ctx, text).parse_family_spec()


def parse_gamma(ctx: Context, text: str) -> tuple:
    try:
        coords = tuple(int(part) for part in text.strip().lstrip("(").rstrip(")").split(","))
    except ValueError:
        raise ParseError(f"cannot read lattice point from {text!r}", 0) from None
    return ctx.check_gamma(coords)


def format_value(value) -> str:
    return str(value)


# ----- action tables ------------------------------------------------------------------


def table_to_text(ctx: Context, table: dict) -> str:
    lines = [f"rank {ctx.rank}"]
    for (mu, nu) in sorted(table):
        mu_s = ",".join(str(c) for c in mu)
        nu_s = ",".join(str(c) for c in nu)
        lines.append(f"{mu_s}; {nu_s}; {table[(mu, nu)]}")
    return "\n".join(lines) + "\n"


def table_from_text(ctx: Context, text: str) -> dict:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty action table", 0)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rank" or not head[1].isdigit():
        raise ParseError(f"first table line must be 'rank n', got {lines[0]!r}", 0)
    if int(head[1]) != ctx.rank:
        raise ContextError(f"table rank {head[1]} does not match session rank {ctx.rank}")
    table = {}
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split(";")
        if len(parts) != 3:
            raise ParseError(f"table line {lineno} needs 'mu; nu; coefficient'", 0)
        mu = parse_gamma(ctx, parts[0])
        nu = parse_gamma(ctx, parts[1])
        coeff = as_scalar(ctx, evaluate(ctx, parts[2]))
        table[(mu, nu)] = coeff
    return table
