"""Arithmetic expression language for problem files.

Grammar (precedence low to high): comparisons / boolean guards are only
used in piecewise conditions; arithmetic is

    expr    := term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          (right associative, integer exponent)
    atom    := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'

Variables are x0..x{n-1}.  '^' binds tighter than unary minus, so
``-x0^2`` is ``-(x0^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class ExpressionError(Exception):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class EvaluationError(Exception):
    """Evaluation hit a declared-undefined region (division by zero etc.)."""


FUNCTIONS = {
    "sin": (1, math.sin),
    "cos": (1, math.cos),
    "atan": (1, math.atan),
    "atan2": (2, math.atan2),
    "abs": (1, abs),
    "sqrt": (1, None),  # domain-checked
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class Compare:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class BoolOp:
    op: str  # 'and' | 'or'
    left: object
    right: object


@dataclass(frozen=True)
class Piecewise:
    branches: tuple  # of (condition, expr); condition None = else branch


_TWO_CHAR = ("<=", ">=", "==", "!=")
_ONE_CHAR = "+-*/^()<>,"


def tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text[i:i + 2] in _TWO_CHAR:
            tokens.append((text[i:i + 2], "op", i))
            i += 2
            continue
        if c in _ONE_CHAR:
            tokens.append((c, "op", i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            seen_e = False
            while j < n and (text[j].isdigit() or text[j] == "." or
                             (text[j] in "eE" and not seen_e) or
                             (text[j] in "+-" and j > i and text[j - 1] in "eE")):
                if text[j] in "eE":
                    seen_e = True
                j += 1
            try:
                tokens.append((float(text[i:j]), "num", i))
            except ValueError:
                raise ExpressionError(f"bad number literal {text[i:j]!r}", i)
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((text[i:j], "ident", i))
            i = j
            continue
        raise ExpressionError(f"unexpected character {c!r}", i)
    tokens.append((None, "end", n))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_compare: bool = False):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.allow_compare = allow_compare

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[0] != value:
            raise ExpressionError(f"expected {value!r}, found {tok[0]!r}", tok[2])
        return tok

    def parse(self):
        node = self.parse_bool() if self.allow_compare else self.parse_expr()
        tok = self.peek()
        if tok[1] != "end":
            raise ExpressionError(f"unexpected trailing input {tok[0]!r}", tok[2])
        return node

    def parse_bool(self):
        node = self.parse_bool_and()
        while self.peek()[0] == "or":
            self.next()
            node = BoolOp("or", node, self.parse_bool_and())
        return node

    def parse_bool_and(self):
        node = self.parse_comparison()
        while self.peek()[0] == "and":
            self.next()
            node = BoolOp("and", node, self.parse_comparison())
        return node

    def parse_comparison(self):
        left = self.parse_expr()
        tok = self.peek()
        if tok[0] in ("<", ">", "<=", ">=", "==", "!="):
            self.next()
            return Compare(tok[0], left, self.parse_expr())
        return left

    def parse_expr(self):
        node = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            node = Bin(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            node = Bin(op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek()[0] == "-":
            self.next()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.next()
            return Bin("^", base, self.parse_unary())
        return base

    def parse_atom(self):
        tok = self.next()
        value, kind, at = tok
        if kind == "num":
            return Num(value)
        if value == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        if kind == "ident":
            if value == "pi":
                return Num(math.pi)
            if self.peek()[0] == "(":
                if value not in FUNCTIONS:
                    raise ExpressionError(f"unknown function {value!r}", at)
                self.next()
                args = [self.parse_expr()]
                while self.peek()[0] == ",":
                    self.next()
                    args.append(self.parse_expr())
                self.expect(")")
                arity = FUNCTIONS[value][0]
                if len(args) != arity:
                    raise ExpressionError(
                        f"{value} takes {arity} argument(s), got {len(args)}", at)
                return Call(value, tuple(args))
            if value.startswith("x") and value[1:].isdigit():
                return Var(int(value[1:]))
            raise ExpressionError(f"unknown identifier {value!r}", at)
        raise ExpressionError(
            f"expected a number, variable, function, or '(', found {value!r}", at)


def parse_expression(text: str):
    """Parse an arithmetic expression into its AST."""
    return _Parser(text).parse()


def parse_condition(text: str):
    """Parse a piecewise guard (comparisons joined with and/or)."""
    return _Parser(text, allow_compare=True).parse()


def evaluate(node, x: np.ndarray) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        if node.index >= len(x):
            raise EvaluationError(f"variable x{node.index} out of range for dim {len(x)}")
        return float(x[node.index])
    if isinstance(node, Neg):
        return -evaluate(node.operand, x)
    if isinstance(node, Bin):
        a = evaluate(node.left, x)
        b = evaluate(node.right, x)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0.0:
                raise EvaluationError("division by zero")
            return a / b
        if node.op == "^":
            if abs(b - round(b)) > 1e-12:
                raise EvaluationError(f"exponent must be an integer, got {b}")
            return float(a ** int(round(b)))
        raise EvaluationError(f"unknown operator {node.op}")
    if isinstance(node, Call):
        args = [evaluate(a, x) for a in node.args]
        if node.name == "sqrt":
            if args[0] < 0:
                raise EvaluationError("sqrt of a negative number")
            return math.sqrt(args[0])
        return float(FUNCTIONS[node.name][1](*args))
    if isinstance(node, Compare):
        a = evaluate(node.left, x)
        b = evaluate(node.right, x)
        return {
            "<": a < b, "<=": a <= b, ">": a > b,
            ">=": a >= b, "==": a == b, "!=": a != b,
        }[node.op]
    if isinstance(node, BoolOp):
        a = evaluate(node.left, x)
        if node.op == "and":
            return bool(a) and bool(evaluate(node.right, x))
        return bool(a) or bool(evaluate(node.right, x))
    if isinstance(node, Piecewise):
        for cond, expr in node.branches:
            if cond is None or evaluate(cond, x):
                return evaluate(expr, x)
        raise EvaluationError("no piecewise branch matched")
    raise EvaluationError(f"cannot evaluate node {node!r}")


def piecewise_from_spec(branches) -> Piecewise:
    """Build a Piecewise from [(guard_text | None, expr_text), ...]."""
    parsed = []
    for guard, expr in branches:
        cond = parse_condition(guard) if guard is not None else None
        parsed.append((cond, parse_expression(expr)))
    return Piecewise(tuple(parsed))
