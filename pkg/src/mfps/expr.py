"""A small expression language for series.

Grammar (``^`` binds tightest, then ``*`` and ``/``, then binary ``+``/``-``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" unary) | ("/" NUMBER))*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" NUMBER)?
    atom   := NUMBER | VAR | "(" expr ")" | ORACLE ["(" args ")"]

``VAR`` is ``x1`` .. ``xn``.  Division is only by a nonzero integer literal,
so ``1/2*x1`` and ``x1/2`` both work and every literal stays rational.
Oracle constructors (``geom2``, ``geom1``, ``expprod``, ``poly``) parse
anywhere but can only be evaluated as a whole expression, via
:func:`expression_oracle`.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArgumentError, ExpressionSyntaxError, VariableRangeError
from .series import constant, pow, scale, variable

ORACLE_NAMES = ("geom2", "geom1", "expprod", "poly")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<var>x\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<str>"[^"]*")
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class OracleCall:
    name: str
    args: tuple


@dataclass(frozen=True)
class Expression:
    root: object
    n: int

    def has_oracle(self):
        return _has_oracle(self.root)

    def degree_bound(self):
        """Upper bound on the total degree of the polynomial this denotes."""
        return _degree(self.root)


def _has_oracle(node):
    if isinstance(node, OracleCall):
        return True
    if isinstance(node, Neg):
        return _has_oracle(node.operand)
    if isinstance(node, BinOp):
        return _has_oracle(node.left) or _has_oracle(node.right)
    if isinstance(node, Pow):
        return _has_oracle(node.base)
    return False


def _degree(node):
    if isinstance(node, Num):
        return 0
    if isinstance(node, Var):
        return 1
    if isinstance(node, Neg):
        return _degree(node.operand)
    if isinstance(node, Pow):
        return node.exponent * _degree(node.base)
    if isinstance(node, BinOp):
        if node.op in "+-":
            return max(_degree(node.left), _degree(node.right))
        if node.op == "/":
            return _degree(node.left)
        return _degree(node.left) + _degree(node.right)
    raise ArgumentError("oracle constructors have no finite degree")


class _Parser:
    def __init__(self, text, n):
        self.text = text
        self.n = n
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _offset(self, char_index):
        return len(self.text[:char_index].encode("utf-8"))

    def _tokenize(self, text):
        tokens = []
        i = 0
        while i < len(text):
            m = _TOKEN.match(text, i)
            if m is None:
                raise ExpressionSyntaxError(f"unexpected character {text[i]!r}", self._offset(i))
            kind = m.lastgroup
            if kind != "ws":
                value = m.group()
                if kind == "op":
                    kind = value
                tokens.append((kind, value, i))
            i = m.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ExpressionSyntaxError(f"unexpected {what}", self._offset(tok[2]), expected)

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail([kind])
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(["+", "-", "*", "/", "^", "end"])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            if op == "*":
                node = BinOp("*", node, self.unary())
            else:
                tok = self.peek()
                if tok[0] != "num":
                    self.fail(["number"])
                self.advance()
                if int(tok[1]) == 0:
                    raise ExpressionSyntaxError("division by zero", self._offset(tok[2]), ["nonzero number"])
                node = BinOp("/", node, Num(Fraction(int(tok[1]))))
        return node

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.advance()
            return Neg(self.unary())
        if kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "num":
                self.fail(["nonnegative integer exponent"])
            self.advance()
            e = int(tok[1])
            if e == 0 and isinstance(base, Num) and base.value == 0:
                raise ExpressionSyntaxError("0^0 is undefined", self._offset(tok[2]))
            if self.peek()[0] == "^":
                self.fail(["parenthesized power"])
            base = Pow(base, e)
        return base

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "num":
            self.advance()
            return Num(Fraction(int(tok[1])))
        if kind == "var":
            self.advance()
            i = int(tok[1][1:])
            if not 1 <= i <= self.n:
                raise VariableRangeError(
                    f"variable {tok[1]} out of range x1..x{self.n}", self._offset(tok[2])
                )
            return Var(i)
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            if tok[1] not in ORACLE_NAMES:
                raise ExpressionSyntaxError(
                    f"unknown name {tok[1]!r}", self._offset(tok[2]), ["x1..xn", *ORACLE_NAMES]
                )
            self.advance()
            return OracleCall(tok[1], self.oracle_args())
        self.fail(["number", "variable", "(", *ORACLE_NAMES])

    def oracle_args(self):
        if self.peek()[0] != "(":
            return ()
        self.advance()
        args = []
        if self.peek()[0] == ")":
            self.advance()
            return ()
        while True:
            args.append(self.oracle_arg())
            if self.peek()[0] == ",":
                self.advance()
                continue
            self.expect(")")
            return tuple(args)

    def oracle_arg(self):
        tok = self.peek()
        if tok[0] == "str":
            self.advance()
            return tok[1][1:-1]
        sign = 1
        if tok[0] == "-":
            self.advance()
            sign = -1
        num = self.expect("num")
        value = Fraction(int(num[1]))
        if self.peek()[0] == "/":
            self.advance()
            den = int(self.expect("num")[1])
            if den == 0:
                raise ExpressionSyntaxError("division by zero", self._offset(num[2]))
            value /= den
        return sign * value


def parse_expression(text, n):
    if n < 1:
        raise ArgumentError("n must be at least 1")
    return Expression(_Parser(text, n).parse(), n)


def eval_expression(e, cfg):
    """Evaluate an oracle-free expression to a series.

    ``cfg`` is either a truncation order or any object with an ``order``
    attribute (such as a session config).
    """
    order = cfg if isinstance(cfg, int) else cfg.order
    if e.has_oracle():
        raise ArgumentError(
            "expression contains an oracle constructor; use an oracle-aware command"
        )
    return _eval(e.root, e.n, order)


def _eval(node, n, order):
    if isinstance(node, Num):
        return constant(n, order, node.value)
    if isinstance(node, Var):
        return variable(n, order, node.index)
    if isinstance(node, Neg):
        return -_eval(node.operand, n, order)
    if isinstance(node, Pow):
        return pow(_eval(node.base, n, order), node.exponent)
    if node.op == "+":
        return _eval(node.left, n, order) + _eval(node.right, n, order)
    if node.op == "-":
        return _eval(node.left, n, order) - _eval(node.right, n, order)
    if node.op == "*":
        return _eval(node.left, n, order) * _eval(node.right, n, order)
    return scale(_eval(node.left, n, order), 1 / node.right.value)


def expression_oracle(e):
    """Build the coefficient oracle an expression denotes.

    An oracle constructor at the root gives that oracle; an oracle-free
    expression gives the finite-support oracle of its polynomial.
    """
    from . import oracles

    root = e.root
    if not isinstance(root, OracleCall):
        if e.has_oracle():
            raise ArgumentError("oracle constructors cannot be combined arithmetically")
        return oracles.poly(_eval(root, e.n, e.degree_bound()))
    args = root.args
    try:
        if root.name == "geom2":
            if e.n != 2:
                raise ArgumentError("geom2 is a two-variable oracle")
            return oracles.geom2(args[0] if args else 1)
        if root.name == "geom1":
            return oracles.geom1(args[0], int(args[1]) if len(args) > 1 else 1, e.n)
        if root.name == "expprod":
            return oracles.expprod(e.n)
        if root.name == "poly":
            from .io import read_series

            return oracles.poly(read_series(args[0]))
    except (IndexError, TypeError) as exc:
        raise ArgumentError(f"bad arguments for {root.name}: {exc}") from exc
    raise ArgumentError(f"unknown oracle {root.name}")
