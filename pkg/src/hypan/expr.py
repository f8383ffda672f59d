"""Expressions for hyperbolic-valued functions of ``z`` and real functions of ``t``.

Grammar (LL(1), recursive descent)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' '-'? INT)?
    atom    := NUMBER | VAR | 'i' | 'pi' | FUNC '(' expr (',' INT)? ')' | '(' expr ')'

Exponentiation binds tighter than negation, so ``-z^2`` is ``-(z^2)``.
``i`` is a keyword atom: write ``2*i``, not ``2i``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import roots, specfun
from .diffcalc import Field2
from .errors import EvaluationDomain, ExprSyntaxError, HypError, InvalidInput
from .hypercore import HNumber, I, conj, div, power

HYPERBOLIC_FUNCS = ("exp", "cosh", "sinh", "conj", "sqrt")
REAL_FUNCS = ("exp", "cosh", "sinh", "sin", "cos", "sqrt")
FUNCS = tuple(sorted(set(HYPERBOLIC_FUNCS) | set(REAL_FUNCS)))


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: HNumber
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    arg: object
    branch: Optional[int] = None
    pos: int = field(default=0, compare=False)


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str    # num, name, op, end
    text: str
    pos: int     # byte offset


def _tokens(src):
    out = []
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        byte = len(src[:i].encode("utf-8"))
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[i]!r}", byte,
                                  {"number", "name", "operator"})
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), byte))
        i = m.end()
    out.append(_Tok("end", "", len(src.encode("utf-8"))))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, src, var):
        self.toks = _tokens(src)
        self.k = 0
        self.var = var

    @property
    def tok(self):
        return self.toks[self.k]

    def _fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {found} at offset {t.pos}", t.pos, expected)

    def _atom_starts(self):
        return {"number", self.var, "i", "pi", "(", "-"} | set(FUNCS)

    def _accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.k += 1
            return True
        return False

    def _expect(self, text, also=()):
        if not self._accept(text):
            self._fail({text, *also})

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self._fail({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok
            self.k += 1
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok
            self.k += 1
            node = BinOp(op.text, node, self.unary(), op.pos)
        return node

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            pos = self.tok.pos
            self.k += 1
            return Neg(self.unary(), pos)
        return self.power()

    def _int(self):
        neg = self._accept("-")
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self._fail({"integer"} if neg else {"integer", "-"})
        self.k += 1
        return -int(t.text) if neg else int(t.text)

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            pos = self.tok.pos
            self.k += 1
            return Pow(base, self._int(), pos)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.k += 1
            return Const(HNumber(float(t.text), 0.0), t.pos)
        if t.kind == "op" and t.text == "(":
            self.k += 1
            node = self.expr()
            self._expect(")", {"+", "-", "*", "/", "^"})
            return node
        if t.kind == "name":
            if t.text == self.var:
                self.k += 1
                return Var(t.text, t.pos)
            if t.text == "i":
                self.k += 1
                return Const(I, t.pos)
            if t.text == "pi":
                self.k += 1
                return Const(HNumber(math.pi, 0.0), t.pos)
            if t.text in FUNCS:
                self.k += 1
                self._expect("(")
                arg = self.expr()
                branch = None
                if self._accept(","):
                    branch = self._int()
                self._expect(")", {",", "+", "-", "*", "/", "^"})
                return Call(t.text, arg, branch, t.pos)
        self._fail(self._atom_starts())


def parse(src, var="z"):
    """Parse ``src`` with ``var`` as the free variable."""
    if not isinstance(src, str):
        raise InvalidInput("expression source must be a string")
    if var in ("i", "pi") or var in FUNCS:
        raise InvalidInput(f"{var!r} is reserved and cannot be the variable")
    return _Parser(src, var).parse()


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _num(x):
    return repr(float(x))


def to_source(node):
    """Fully parenthesised source that parses back to an equal tree."""
    if isinstance(node, Const):
        z = node.value
        if z.im == 0.0 and z.re >= 0 and math.copysign(1.0, z.re) > 0:
            return _num(z.re)
        if z.re == 0.0 and z.im == 1.0:
            return "i"
        raise InvalidInput(f"constant {z} has no literal form")
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Pow):
        return f"({to_source(node.base)}^{node.exponent})"
    if isinstance(node, Call):
        extra = "" if node.branch is None else f", {node.branch}"
        return f"{node.name}({to_source(node.arg)}{extra})"
    raise InvalidInput(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _tag(exc, node):
    if isinstance(exc, HypError) and exc.pos is None:
        exc.pos = node.pos
    return exc


def _hyp(node, z):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return z
    try:
        if isinstance(node, Neg):
            return -_hyp(node.operand, z)
        if isinstance(node, BinOp):
            a, b = _hyp(node.left, z), _hyp(node.right, z)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            return div(a, b)
        if isinstance(node, Pow):
            return power(_hyp(node.base, z), node.exponent)
        if isinstance(node, Call):
            a = _hyp(node.arg, z)
            if node.name not in HYPERBOLIC_FUNCS:
                raise InvalidInput(f"{node.name} is not defined on hyperbolic numbers")
            if node.name != "sqrt" and node.branch is not None:
                raise InvalidInput(f"{node.name} takes no branch argument")
            if node.name == "exp":
                return specfun.exp(a)
            if node.name == "cosh":
                return specfun.cosh(a)
            if node.name == "sinh":
                return specfun.sinh(a)
            if node.name == "conj":
                return conj(a)
            return roots.sqrt_branch(a, 1 if node.branch is None else node.branch)
    except HypError as exc:
        raise _tag(exc, node)
    raise InvalidInput(f"not an expression node: {node!r}")


_REAL_FN = {"exp": np.exp, "cosh": np.cosh, "sinh": np.sinh, "sin": np.sin, "cos": np.cos}


def _real(node, t):
    if isinstance(node, Const):
        if node.value.im != 0.0:
            raise _tag(EvaluationDomain("i has no meaning in a real expression"), node)
        return node.value.re
    if isinstance(node, Var):
        if t is None:
            raise _tag(EvaluationDomain(f"variable {node.name} has no value here"), node)
        return t
    if isinstance(node, Neg):
        return -_real(node.operand, t)
    if isinstance(node, BinOp):
        a, b = _real(node.left, t), _real(node.right, t)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if np.any(np.asarray(b) == 0):
            raise _tag(EvaluationDomain("division by zero"), node)
        return a / b
    if isinstance(node, Pow):
        base = _real(node.base, t)
        if node.exponent < 0 and np.any(np.asarray(base) == 0):
            raise _tag(EvaluationDomain("zero to a negative power"), node)
        return np.power(np.asarray(base, dtype=float), node.exponent) if np.ndim(base) else \
            float(base) ** node.exponent
    if isinstance(node, Call):
        a = _real(node.arg, t)
        if node.branch is not None:
            raise _tag(InvalidInput(f"{node.name} takes no branch argument in a real expression"), node)
        if node.name == "sqrt":
            if np.any(np.asarray(a) < 0):
                raise _tag(EvaluationDomain("square root of a negative number"), node)
            return np.sqrt(a)
        if node.name not in _REAL_FN:
            raise _tag(InvalidInput(f"{node.name} is not defined for real expressions"), node)
        with np.errstate(over="ignore"):
            return _REAL_FN[node.name](a)
    raise InvalidInput(f"not an expression node: {node!r}")


def evaluate(node, binding, mode="hyperbolic"):
    """Evaluate a tree with its variable bound to ``binding``.

    In ``hyperbolic`` mode ``binding`` is an :class:`HNumber` (or a real,
    embedded with zero imaginary part) and the result is an HNumber. In
    ``real`` mode values are floats or numpy arrays.
    """
    if mode == "hyperbolic":
        if binding is not None and not isinstance(binding, HNumber):
            binding = HNumber(binding, 0.0 * np.asarray(binding) if np.ndim(binding) else 0.0)
        return _hyp(node, binding)
    if mode == "real":
        return _real(node, binding)
    raise InvalidInput(f"mode must be 'hyperbolic' or 'real', got {mode!r}")


def evaluate_source(src, binding, mode="hyperbolic", var=None):
    var = var or ("z" if mode == "hyperbolic" else "t")
    return evaluate(parse(src, var), binding, mode)


def field_from_expr(src, var="z"):
    """A :class:`Field2` evaluating the expression at ``x + i y``."""
    ast = parse(src, var)
    return Field2.from_hyperbolic(lambda z: evaluate(ast, z), name=src)


def real_function(src, var="t"):
    """A vectorised real function of one variable."""
    ast = parse(src, var)
    return lambda t: evaluate(ast, t, mode="real")
