"""Expression trees for vertex displacement functions.

A displacement function is a tree over the binary operators add, sub, mul,
div, the unary operators neg, sin, cos, and the terminals x, y, z, t and
real constants in [-1, 1).  Trees are immutable values: genetic operators
return new trees and never alias mutable state, so everything here is safe
to call concurrently as long as each caller owns its random stream.

Division is protected (a denominator smaller than ``DIV_GUARD`` in
magnitude yields 1.0), and point coordinates as well as every arithmetic
result are clamped to ``±VALUE_LIMIT``, so evaluation is total and closed
over that range: finite in, finite out, no matter how the tree is shaped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

import numpy as np

BINARY_OPS = ("add", "sub", "mul", "div")
UNARY_OPS = ("neg", "sin", "cos")
OPERATORS = BINARY_OPS + UNARY_OPS
VARIABLES = ("x", "y", "z", "t")
TERMINAL_KINDS = VARIABLES + ("const",)

MAX_DEPTH = 10

# Protected division: |denominator| below the guard returns 1.0.
DIV_GUARD = 1e-6

# Per-node magnitude cap.  The square of the cap stays below the float64
# overflow threshold, so no operator chain can ever produce inf or nan.
VALUE_LIMIT = 1e150

# Attempts at picking crossover / mutation points before giving up and
# returning the parents unchanged.
_POINT_RETRIES = 8


class ExprError(ValueError):
    """Invalid expression construction or operation parameters."""


class ParseError(ExprError):
    """Malformed s-expression text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Expression:
    """One node of a displacement-function tree.

    ``op`` is an operator name, a variable name, or ``"const"``.  Binary
    operators carry exactly two children, unary operators one, terminals
    none.  ``value`` is set only for constants.
    """

    op: str
    args: tuple[Expression, ...] = ()
    value: float | None = None

    def __post_init__(self) -> None:
        if self.op in BINARY_OPS:
            arity = 2
        elif self.op in UNARY_OPS:
            arity = 1
        elif self.op in VARIABLES or self.op == "const":
            arity = 0
        else:
            raise ExprError(f"unknown node kind {self.op!r}")
        if len(self.args) != arity:
            raise ExprError(
                f"{self.op} takes {arity} argument(s), got {len(self.args)}"
            )
        if self.op == "const":
            if self.value is None or not math.isfinite(self.value):
                raise ExprError("const requires a finite value")
            if not -1.0 <= self.value < 1.0:
                raise ExprError(f"const {self.value!r} outside [-1, 1)")
        elif self.value is not None:
            raise ExprError(f"{self.op} does not take a value")


@dataclass(frozen=True)
class EvalPoint:
    """A single evaluation point: model-space x, y, z and time t in seconds."""

    x: float
    y: float
    z: float
    t: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z", "t"):
            if not math.isfinite(getattr(self, name)):
                raise ExprError(f"EvalPoint.{name} must be finite")


# Convenience constructors, mostly for tests and demos.

def var(name: str) -> Expression:
    return Expression(name)


def const(value: float) -> Expression:
    return Expression("const", value=float(value))


X, Y, Z, T = (Expression(v) for v in VARIABLES)


def depth(e: Expression) -> int:
    """Longest root-to-leaf path, counted in nodes (a terminal has depth 1)."""
    if not e.args:
        return 1
    return 1 + max(depth(a) for a in e.args)


def size(e: Expression) -> int:
    """Total number of nodes in the tree."""
    return 1 + sum(size(a) for a in e.args)


def is_dynamic(e: Expression) -> bool:
    """True when the tree references t, i.e. the displacement animates."""
    if e.op == "t":
        return True
    return any(is_dynamic(a) for a in e.args)


def _clamp(v: float) -> float:
    if v > VALUE_LIMIT:
        return VALUE_LIMIT
    if v < -VALUE_LIMIT:
        return -VALUE_LIMIT
    return v


def evaluate(e: Expression, p: EvalPoint) -> float:
    """Evaluate the tree at one point.  Total: finite for any finite point."""
    op = e.op
    if op == "const":
        return e.value  # type: ignore[return-value]
    if op == "x":
        return _clamp(p.x)
    if op == "y":
        return _clamp(p.y)
    if op == "z":
        return _clamp(p.z)
    if op == "t":
        return _clamp(p.t)
    if op in UNARY_OPS:
        v = evaluate(e.args[0], p)
        if op == "neg":
            return -v
        if op == "sin":
            return math.sin(v)
        return math.cos(v)
    a = evaluate(e.args[0], p)
    b = evaluate(e.args[1], p)
    if op == "add":
        return _clamp(a + b)
    if op == "sub":
        return _clamp(a - b)
    if op == "mul":
        return _clamp(a * b)
    # protected division
    if abs(b) < DIV_GUARD:
        return 1.0
    return _clamp(a / b)


def evaluate_many(
    e: Expression,
    xs: np.ndarray,
    ys: np.ndarray,
    zs: np.ndarray,
    ts: np.ndarray,
) -> np.ndarray:
    """Evaluate the tree over parallel coordinate arrays in one pass.

    Bitwise-identical to calling :func:`evaluate` per point (the float64
    kernels match libm); the scalar interpreter stays the reference and the
    test suite holds this function to it.
    """
    return _evaluate_arrays(
        e,
        np.clip(xs, -VALUE_LIMIT, VALUE_LIMIT),
        np.clip(ys, -VALUE_LIMIT, VALUE_LIMIT),
        np.clip(zs, -VALUE_LIMIT, VALUE_LIMIT),
        np.clip(ts, -VALUE_LIMIT, VALUE_LIMIT),
    )


def _evaluate_arrays(
    e: Expression,
    xs: np.ndarray,
    ys: np.ndarray,
    zs: np.ndarray,
    ts: np.ndarray,
) -> np.ndarray:
    op = e.op
    if op == "const":
        return np.full_like(xs, e.value)
    if op == "x":
        return xs
    if op == "y":
        return ys
    if op == "z":
        return zs
    if op == "t":
        return ts
    if op in UNARY_OPS:
        v = _evaluate_arrays(e.args[0], xs, ys, zs, ts)
        if op == "neg":
            return -v
        if op == "sin":
            return np.sin(v)
        return np.cos(v)
    a = _evaluate_arrays(e.args[0], xs, ys, zs, ts)
    b = _evaluate_arrays(e.args[1], xs, ys, zs, ts)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if op == "add":
            out = a + b
        elif op == "sub":
            out = a - b
        elif op == "mul":
            out = a * b
        else:
            out = np.ones_like(a)
            np.divide(a, b, out=out, where=np.abs(b) >= DIV_GUARD)
        return np.clip(out, -VALUE_LIMIT, VALUE_LIMIT)


def random_tree(method: str, depth_limit: int, rng: Random) -> Expression:
    """Build a random tree no deeper than ``depth_limit``.

    ``full`` places operators at every level above the leaves so all leaves
    sit exactly at ``depth_limit``; ``grow`` flips a coin between operator
    and terminal at each position above the limit.  Node kinds are drawn
    uniformly within their class and constants uniformly from [-1, 1).
    """
    if method not in ("grow", "full"):
        raise ExprError(f"unknown generation method {method!r}")
    if not isinstance(depth_limit, int) or not 1 <= depth_limit <= MAX_DEPTH:
        raise ExprError(f"depth_limit must be in [1, {MAX_DEPTH}], got {depth_limit!r}")

    def build(remaining: int) -> Expression:
        if remaining <= 1:
            return _random_terminal(rng)
        if method == "grow" and rng.random() < 0.5:
            return _random_terminal(rng)
        op = rng.choice(OPERATORS)
        arity = 2 if op in BINARY_OPS else 1
        return Expression(op, tuple(build(remaining - 1) for _ in range(arity)))

    return build(depth_limit)


def _random_terminal(rng: Random) -> Expression:
    kind = rng.choice(TERMINAL_KINDS)
    if kind == "const":
        return Expression("const", value=rng.uniform(-1.0, 1.0))
    return Expression(kind)


def _subtree_at(e: Expression, index: int) -> Expression:
    """Node at the given preorder index."""
    if index == 0:
        return e
    index -= 1
    for child in e.args:
        n = size(child)
        if index < n:
            return _subtree_at(child, index)
        index -= n
    raise ExprError("node index out of range")


def _replace_at(e: Expression, index: int, replacement: Expression) -> Expression:
    """New tree with the subtree at the given preorder index swapped out."""
    if index == 0:
        return replacement
    index -= 1
    new_args = []
    replaced = False
    for child in e.args:
        n = size(child)
        if not replaced and 0 <= index < n:
            new_args.append(_replace_at(child, index, replacement))
            replaced = True
        else:
            new_args.append(child)
        index -= n
    if not replaced:
        raise ExprError("node index out of range")
    return Expression(e.op, tuple(new_args), e.value)


def crossover(a: Expression, b: Expression, rng: Random) -> tuple[Expression, Expression]:
    """Swap uniformly chosen subtrees between two parents.

    Point selection is retried when an offspring would exceed ``MAX_DEPTH``;
    after the retry budget the parents are returned unchanged (trees are
    immutable, so that is already a copy).
    """
    size_a, size_b = size(a), size(b)
    for _ in range(1 + _POINT_RETRIES):
        i = rng.randrange(size_a)
        j = rng.randrange(size_b)
        sub_a = _subtree_at(a, i)
        sub_b = _subtree_at(b, j)
        child_a = _replace_at(a, i, sub_b)
        child_b = _replace_at(b, j, sub_a)
        if depth(child_a) <= MAX_DEPTH and depth(child_b) <= MAX_DEPTH:
            return child_a, child_b
    return a, b


def mutate(e: Expression, rng: Random) -> Expression:
    """Replace a uniformly chosen subtree with a fresh grown tree (depth <= 3)."""
    n = size(e)
    for _ in range(1 + _POINT_RETRIES):
        i = rng.randrange(n)
        replacement = random_tree("grow", 3, rng)
        child = _replace_at(e, i, replacement)
        if depth(child) <= MAX_DEPTH:
            return child
    return e


def serialize(e: Expression) -> str:
    """Canonical prefix s-expression, e.g. ``(div x (add x z))``.

    Constants are rendered with up to 17 significant digits, enough for an
    exact float64 round-trip through :func:`deserialize`.
    """
    if e.op == "const":
        return f"(const {format(e.value, '.17g')})"
    if e.op in VARIABLES:
        return e.op
    inner = " ".join(serialize(a) for a in e.args)
    return f"({e.op} {inner})"


def deserialize(text: str) -> Expression:
    """Parse the canonical s-expression form back into a tree.

    Raises :class:`ParseError` with the offending position on malformed
    input.  Depth is not limited here; depth policy belongs to the genetic
    operators and to population seeding.
    """
    tokens = _tokenize(text)
    expr, next_index = _parse_expr(tokens, 0, text)
    if next_index != len(tokens):
        raise ParseError("trailing content after expression", tokens[next_index][1])
    return expr


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    if not tokens:
        raise ParseError("empty input", 0)
    return tokens


def _parse_expr(tokens: list[tuple[str, int]], i: int, text: str) -> tuple[Expression, int]:
    if i >= len(tokens):
        raise ParseError("unexpected end of input", len(text))
    tok, pos = tokens[i]
    if tok == ")":
        raise ParseError("unexpected ')'", pos)
    if tok != "(":
        if tok in VARIABLES:
            return Expression(tok), i + 1
        raise ParseError(f"unknown terminal {tok!r}", pos)
    i += 1
    if i >= len(tokens):
        raise ParseError("unexpected end of input after '('", len(text))
    head, head_pos = tokens[i]
    i += 1
    if head == "const":
        if i >= len(tokens):
            raise ParseError("missing constant value", len(text))
        num_tok, num_pos = tokens[i]
        try:
            value = float(num_tok)
        except ValueError:
            raise ParseError(f"invalid number {num_tok!r}", num_pos) from None
        i += 1
        i = _expect_close(tokens, i, text)
        try:
            return Expression("const", value=value), i
        except ExprError as exc:
            raise ParseError(str(exc), num_pos) from None
    if head not in OPERATORS:
        raise ParseError(f"unknown operator {head!r}", head_pos)
    arity = 2 if head in BINARY_OPS else 1
    args = []
    for _ in range(arity):
        if i < len(tokens) and tokens[i][0] == ")":
            raise ParseError(f"{head} expects {arity} argument(s)", tokens[i][1])
        arg, i = _parse_expr(tokens, i, text)
        args.append(arg)
    i = _expect_close(tokens, i, text)
    return Expression(head, tuple(args)), i


def _expect_close(tokens: list[tuple[str, int]], i: int, text: str) -> int:
    if i >= len(tokens):
        raise ParseError("missing ')'", len(text))
    tok, pos = tokens[i]
    if tok != ")":
        raise ParseError(f"expected ')', got {tok!r}", pos)
    return i + 1
