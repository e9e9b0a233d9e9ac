"""Independent infix evaluator used to cross-check emitted GLSL expressions.

This is a standard-precedence recursive-descent parser: it does NOT trust
the emitter's parentheses, so a missing or misplaced paren in the emitted
text changes the parse and the comparison fails.  Arithmetic mirrors the
documented interpreter semantics (protected division, per-node clamp,
float64 throughout) so agreement must be exact.
"""

from __future__ import annotations

import math

DIV_GUARD = 1e-6
VALUE_LIMIT = 1e150


def _clamp(v: float) -> float:
    if v > VALUE_LIMIT:
        return VALUE_LIMIT
    if v < -VALUE_LIMIT:
        return -VALUE_LIMIT
    return v


class InfixParser:
    """Parses `a + b * sin(x)`-style text into a nested tuple AST."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self):
        node = self._additive()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return node

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _additive(self):
        node = self._multiplicative()
        while True:
            c = self._peek()
            if c == "+":
                self.pos += 1
                node = ("+", node, self._multiplicative())
            elif c == "-":
                self.pos += 1
                node = ("-", node, self._multiplicative())
            else:
                return node

    def _multiplicative(self):
        node = self._unary()
        while True:
            c = self._peek()
            if c == "*":
                self.pos += 1
                node = ("*", node, self._unary())
            elif c == "/":
                self.pos += 1
                node = ("/", node, self._unary())
            else:
                return node

    def _unary(self):
        if self._peek() == "-":
            self.pos += 1
            return ("negate", self._unary())
        return self._primary()

    def _primary(self):
        c = self._peek()
        if c == "(":
            self.pos += 1
            node = self._additive()
            if self._peek() != ")":
                raise ValueError(f"missing ')' at {self.pos}")
            self.pos += 1
            return node
        if c.isdigit() or c == ".":
            return self._number()
        if c.isalpha():
            return self._name()
        raise ValueError(f"unexpected character {c!r} at {self.pos}")

    def _number(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isdigit() or self.text[self.pos] in ".eE"
            or (self.text[self.pos] in "+-" and self.text[self.pos - 1] in "eE")
        ):
            self.pos += 1
        return ("num", float(self.text[start : self.pos]))

    def _name(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        name = self.text[start : self.pos]
        if self._peek() == "(":
            self.pos += 1
            args = [self._additive()]
            while self._peek() == ",":
                self.pos += 1
                args.append(self._additive())
            if self._peek() != ")":
                raise ValueError(f"missing ')' at {self.pos}")
            self.pos += 1
            return ("call", name, args)
        return ("var", name)


def eval_ast(node, env: dict[str, float]) -> float:
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        return _clamp(env[node[1]])
    if kind == "negate":
        return -eval_ast(node[1], env)
    if kind == "call":
        _, name, args = node
        vals = [eval_ast(a, env) for a in args]
        if name == "sin":
            return math.sin(vals[0])
        if name == "cos":
            return math.cos(vals[0])
        if name == "pdiv":
            a, b = vals
            if abs(b) < DIV_GUARD:
                return 1.0
            return _clamp(a / b)
        raise ValueError(f"unknown function {name!r}")
    _, left, right = node
    a, b = eval_ast(left, env), eval_ast(right, env)
    if kind == "+":
        return _clamp(a + b)
    if kind == "-":
        return _clamp(a - b)
    if kind == "*":
        return _clamp(a * b)
    if kind == "/":
        if abs(b) < DIV_GUARD:
            return 1.0
        return _clamp(a / b)
    raise ValueError(f"unknown node {kind!r}")


def evaluate_infix(text: str, x: float, y: float, z: float, t: float) -> float:
    return eval_ast(InfixParser(text).parse(), {"x": x, "y": y, "z": z, "t": t})
