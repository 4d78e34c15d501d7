"""Tiny exact-arithmetic expression language for catalog data.

Catalog files carry coefficients and matrix entries as strings such as
``-1/2``, ``i*k``, ``(e1*a^2)/(e2*b)`` or ``a*(b+c)-d``.  This module
evaluates those strings at exact rational bindings; there is no symbolic
simplification, only evaluation.

Grammar (whitespace ignored)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('-' | '+') factor | power
    power   := atom ('^' integer)?
    atom    := rational | 'i' | name | 'abs' '(' expr ')' | '(' expr ')'
    rational:= integer ('/' integer)?

``i`` is the imaginary unit and is reserved; every other name must be
bound when evaluating.  Constraints are comparisons ``expr OP expr`` with
OP one of ``== != < <= > >=``; ordering comparisons require both sides to
be real.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import ConstraintError, ParseError
from .linalg import Scalar

_OPS = ("==", "!=", "<=", ">=", "<", ">")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(text[start:pos])
        elif ch.isalpha() or ch == "_":
            start = pos
            while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(text[start:pos])
        elif ch in "+-*/^()":
            tokens.append(ch)
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in expression {text!r}")
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r} in {self.text!r}")

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing tokens in expression {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            node = (op, node, self.factor())
        return node

    def factor(self):
        tok = self.peek()
        if tok in ("-", "+"):
            self.take()
            node = self.factor()
            return ("neg", node) if tok == "-" else node
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == "^":
            self.take()
            exponent = self.take()
            if not exponent.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            node = ("pow", node, int(exponent))
        return node

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            value = Fraction(int(tok))
            if self.peek() == "/" and self._next_is_digit():
                self.take()
                denom = self.take()
                value = Fraction(int(tok), int(denom))
            return ("const", value)
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok == "abs":
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return ("abs", node)
        if tok == "i":
            return ("imag",)
        if tok[0].isalpha() or tok[0] == "_":
            return ("name", tok)
        raise ParseError(f"unexpected token {tok!r} in expression {self.text!r}")

    def _next_is_digit(self) -> bool:
        nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
        return nxt is not None and nxt.isdigit()


@lru_cache(maxsize=None)
def parse(text: str):
    """Parse an expression string into an AST (cached)."""
    return _Parser(text).parse()


def _eval(node, bindings: Mapping[str, Scalar]) -> Scalar:
    kind = node[0]
    if kind == "const":
        return Scalar(node[1])
    if kind == "imag":
        return Scalar(Fraction(0), Fraction(1))
    if kind == "name":
        name = node[1]
        if name not in bindings:
            raise ConstraintError(f"unbound parameter {name!r}")
        return Scalar.of(bindings[name])
    if kind == "neg":
        return -_eval(node[1], bindings)
    if kind == "abs":
        value = _eval(node[1], bindings)
        if not value.is_real:
            raise ConstraintError("abs() of a non-real value")
        return Scalar(abs(value.re))
    if kind == "pow":
        base = _eval(node[1], bindings)
        result = Scalar(Fraction(1))
        for _ in range(node[2]):
            result = result * base
        return result
    left = _eval(node[1], bindings)
    right = _eval(node[2], bindings)
    if kind == "+":
        return left + right
    if kind == "-":
        return left - right
    if kind == "*":
        return left * right
    if kind == "/":
        if right.is_zero:
            raise ZeroDivisionError(f"division by zero while evaluating expression")
        return left / right
    raise ParseError(f"unknown node {kind!r}")


def evaluate(text: str, bindings: Mapping[str, Scalar] | None = None) -> Scalar:
    """Evaluate an expression string at the given bindings."""
    return _eval(parse(text), bindings or {})


def free_names(text: str) -> set[str]:
    """All parameter names appearing in the expression (excluding ``i``)."""
    names: set[str] = set()

    def walk(node):
        if node[0] == "name":
            names.add(node[1])
        for child in node[1:]:
            if isinstance(child, tuple):
                walk(child)

    walk(parse(text))
    return names


def check_constraint(text: str, bindings: Mapping[str, Scalar]) -> bool:
    """Evaluate a comparison ``lhs OP rhs`` at the bindings."""
    for op in _OPS:
        depth = 0
        for pos in range(len(text) - len(op) + 1):
            ch = text[pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if depth == 0 and text[pos : pos + len(op)] == op:
                prev = text[pos - 1] if pos else ""
                nxt = text[pos + len(op)] if pos + len(op) < len(text) else ""
                if op in ("<", ">") and (nxt == "=" or prev in "<>!="):
                    continue
                lhs = evaluate(text[:pos], bindings)
                rhs = evaluate(text[pos + len(op) :], bindings)
                if op == "==":
                    return lhs == rhs
                if op == "!=":
                    return lhs != rhs
                if not (lhs.is_real and rhs.is_real):
                    raise ConstraintError(
                        f"ordering comparison on non-real values in {text!r}"
                    )
                if op == "<":
                    return lhs.re < rhs.re
                if op == "<=":
                    return lhs.re <= rhs.re
                if op == ">":
                    return lhs.re > rhs.re
                if op == ">=":
                    return lhs.re >= rhs.re
    raise ParseError(f"no comparison operator found in constraint {text!r}")


def constraint_names(text: str) -> set[str]:
    """Free parameter names of a constraint line."""
    for op in _OPS:
        idx = text.find(op)
        if idx >= 0:
            nxt = text[idx + len(op)] if idx + len(op) < len(text) else ""
            if op in ("<", ">") and nxt == "=":
                continue
            return free_names(text[:idx]) | free_names(text[idx + len(op) :])
    raise ParseError(f"no comparison operator found in constraint {text!r}")
