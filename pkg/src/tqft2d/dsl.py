"""Cobordism expression language.

Grammar::

    expr   := term { ";" term }
    term   := factor { "*" factor }
    factor := "id" | "unit" | "counit" | "mul" | "comul" | "swap"
            | "surf" "(" int "," int "," int ")"
            | "(" expr ")"

``*`` is disjoint union and binds tighter than ``;``, which composes in
diagram order: ``a ; b`` means first ``a`` then ``b``.
"""

import re
from dataclasses import dataclass, field

import numpy as np

from . import cobordism as cb
from .errors import ArityMismatch, TQFTError
from .linalg import kron

GENERATOR_NAMES = ("id", "unit", "counit", "mul", "comul", "swap")
GENERATOR_ARITY = {"id": (1, 1), "unit": (0, 1), "counit": (1, 0), "mul": (2, 1), "comul": (1, 2), "swap": (2, 2)}


class ExprSyntaxError(TQFTError):
    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


class ArityError(ArityMismatch):
    def __init__(self, first, second, out_arity, in_arity):
        super().__init__(
            f"arity mismatch: '{pretty(first)}' has {out_arity} outputs "
            f"but '{pretty(second)}' has {in_arity} inputs"
        )
        self.first = first
        self.second = second


@dataclass(frozen=True)
class Gen:
    name: str
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Surf:
    genus: int
    n_in: int
    n_out: int
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Tensor:
    left: object
    right: object
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Seq:
    first: object
    second: object
    span: tuple = field(default=None, compare=False, repr=False)


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_]\w*)|(?P<punct>[;*(),]))")


@dataclass
class _Token:
    kind: str
    text: str
    start: tuple
    end: tuple


def _tokenize(src):
    line_starts = [0] + [m.end() for m in re.finditer("\n", src)]

    def loc(offset):
        line = max(i for i, s in enumerate(line_starts) if s <= offset)
        return (line + 1, offset - line_starts[line] + 1)

    tokens, pos = [], 0
    while True:
        m = _TOKEN_RE.match(src, pos)
        if not m or m.end() == m.start() or m.lastgroup is None:
            rest = src[pos:]
            stripped = rest.lstrip()
            if not stripped:
                tokens.append(_Token("eof", "", loc(len(src)), loc(len(src))))
                return tokens
            off = pos + len(rest) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", *loc(off))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(_Token(kind, m.group(kind), loc(start), loc(m.end())))
        pos = m.end()


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.text != text or t.kind == "eof":
            raise ExprSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", *t.start)
        return self.advance()

    def parse(self):
        e = self.expr()
        if self.tok.kind != "eof":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", *self.tok.start)
        return e

    def expr(self):
        left = self.term()
        while self.tok.text == ";":
            self.advance()
            right = self.term()
            left = Seq(left, right, (left.span[0], right.span[1]))
        return left

    def term(self):
        left = self.factor()
        while self.tok.text == "*":
            self.advance()
            right = self.factor()
            left = Tensor(left, right, (left.span[0], right.span[1]))
        return left

    def integer(self):
        t = self.tok
        if t.kind != "int":
            raise ExprSyntaxError(f"expected an integer, found {t.text or 'end of input'!r}", *t.start)
        self.advance()
        return int(t.text)

    def factor(self):
        t = self.tok
        if t.text == "(":
            self.advance()
            inner = self.expr()
            close = self.expect(")")
            return _with_span(inner, (t.start, close.end))
        if t.kind == "ident" and t.text == "surf":
            self.advance()
            self.expect("(")
            g = self.integer()
            self.expect(",")
            m = self.integer()
            self.expect(",")
            n = self.integer()
            close = self.expect(")")
            return Surf(g, m, n, (t.start, close.end))
        if t.kind == "ident" and t.text in GENERATOR_NAMES:
            self.advance()
            return Gen(t.text, (t.start, t.end))
        if t.kind == "ident":
            raise ExprSyntaxError(f"unknown generator {t.text!r}", *t.start)
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", *t.start)


def _with_span(node, span):
    return type(node)(**{**node.__dict__, "span": span})


def parse(src, check=True):
    """Parse ``src`` into an AST; with ``check`` also verify arities."""
    expr = _Parser(src).parse()
    if check:
        arity(expr)
    return expr


def arity(expr):
    """``(inputs, outputs)`` of an expression; raises ArityError on a bad composition."""
    if isinstance(expr, Gen):
        return GENERATOR_ARITY[expr.name]
    if isinstance(expr, Surf):
        return (expr.n_in, expr.n_out)
    if isinstance(expr, Tensor):
        (a, b), (c, d) = arity(expr.left), arity(expr.right)
        return (a + c, b + d)
    if isinstance(expr, Seq):
        (a, b), (c, d) = arity(expr.first), arity(expr.second)
        if b != c:
            raise ArityError(expr.first, expr.second, b, c)
        return (a, d)
    raise TypeError(f"not an expression: {expr!r}")


def pretty(expr):
    """Render with the fewest parentheses that reparse to the same tree."""
    if isinstance(expr, Gen):
        return expr.name
    if isinstance(expr, Surf):
        return f"surf({expr.genus},{expr.n_in},{expr.n_out})"
    if isinstance(expr, Seq):
        right = pretty(expr.second)
        if isinstance(expr.second, Seq):
            right = f"({right})"
        return f"{pretty(expr.first)} ; {right}"
    if isinstance(expr, Tensor):
        left, right = pretty(expr.left), pretty(expr.right)
        if isinstance(expr.left, Seq):
            left = f"({left})"
        if isinstance(expr.right, (Seq, Tensor)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(f"not an expression: {expr!r}")


def to_cobordism(expr):
    if isinstance(expr, Gen):
        return cb.generator(expr.name)
    if isinstance(expr, Surf):
        return cb.surface(expr.genus, expr.n_in, expr.n_out)
    if isinstance(expr, Tensor):
        return cb.tensor(to_cobordism(expr.left), to_cobordism(expr.right))
    if isinstance(expr, Seq):
        arity(expr)
        return cb.compose(to_cobordism(expr.first), to_cobordism(expr.second))
    raise TypeError(f"not an expression: {expr!r}")


def _ids(k):
    return [Gen("id")] * k


def _tensor_all(parts):
    out = parts[0]
    for p in parts[1:]:
        out = Tensor(out, p)
    return out


def _seq_all(parts):
    out = parts[0]
    for p in parts[1:]:
        out = Seq(out, p)
    return out


def surf_word(genus, n_in, n_out):
    """Generator word for a connected surface: merge inputs, add handles, split outputs."""
    steps = []
    if n_in == 0:
        steps.append(Gen("unit"))
    for k in range(n_in - 1, 0, -1):
        steps.append(_tensor_all([Gen("mul")] + _ids(k - 1)))
    steps.extend([Gen("comul"), Gen("mul")] * genus)
    for k in range(1, n_out):
        steps.append(_tensor_all([Gen("comul")] + _ids(k - 1)))
    if n_out == 0:
        steps.append(Gen("counit"))
    if not steps:
        steps.append(Gen("id"))
    return _seq_all(steps)


def generator_matrix(a, name):
    n = a.dim
    if name == "id":
        return np.eye(n, dtype=complex)
    if name == "unit":
        return a.unit.reshape(-1, 1)
    if name == "counit":
        return a.counit.reshape(1, -1)
    if name == "mul":
        return a.mul_matrix
    if name == "comul":
        return a.comul_matrix
    if name == "swap":
        p = np.zeros((n * n, n * n), dtype=complex)
        for i in range(n):
            for j in range(n):
                p[j * n + i, i * n + j] = 1
        return p
    raise KeyError(name)


def evaluate_direct(a, expr):
    """Evaluate by composing generator matrices, without building a cobordism."""
    if isinstance(expr, Gen):
        return generator_matrix(a, expr.name)
    if isinstance(expr, Surf):
        return evaluate_direct(a, surf_word(expr.genus, expr.n_in, expr.n_out))
    if isinstance(expr, Tensor):
        return kron(evaluate_direct(a, expr.left), evaluate_direct(a, expr.right))
    if isinstance(expr, Seq):
        arity(expr)
        return evaluate_direct(a, expr.second) @ evaluate_direct(a, expr.first)
    raise TypeError(f"not an expression: {expr!r}")


def evaluate_expr(a, expr):
    """Evaluate through the cobordism normal form."""
    if isinstance(expr, str):
        expr = parse(expr)
    return cb.evaluate(a, to_cobordism(expr))
