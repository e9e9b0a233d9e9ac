"""GLSL vertex-shader emission for displacement expressions.

Each expression becomes one complete vertex shader: the tree is rendered
as a fully parenthesized infix expression, its scalar result is added to
all three vertex coordinates, and the transformed position goes through
the usual projection pipeline.  The shader dialect is GLSL ES 1.00 so the
output runs in any baseline WebGL context.

Division in the shader goes through a ``pdiv`` helper with the same guard
as the interpreter, so CPU and GPU evaluation agree (up to float32
precision on the GPU side).
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import BINARY_OPS, Expression, is_dynamic, serialize

PDIV_HELPER = "float pdiv(float a, float b) { return (abs(b) < 1e-6) ? 1.0 : (a / b); }"

_INFIX = {"add": "+", "sub": "-", "mul": "*"}


@dataclass(frozen=True)
class ShaderArtifact:
    """A compiled-to-source candidate: shader text plus display metadata."""

    glsl_source: str
    expr_text: str
    dynamic: bool
    expr_sexpr: str


def emit_expression(e: Expression) -> str:
    """Render the tree as a GLSL scalar expression.

    Binary nodes parenthesize themselves, division becomes ``pdiv(a, b)``,
    and constants keep enough digits to round-trip the exact float64 value.
    """
    op = e.op
    if op == "const":
        return _glsl_float(e.value)  # type: ignore[arg-type]
    if not e.args:
        return op
    if op in BINARY_OPS:
        left = emit_expression(e.args[0])
        right = emit_expression(e.args[1])
        if op == "div":
            return f"pdiv({left}, {right})"
        return f"({left} {_INFIX[op]} {right})"
    inner = emit_expression(e.args[0])
    if op == "neg":
        return f"(-({inner}))"
    return f"{op}({inner})"


def _glsl_float(value: float) -> str:
    # repr gives the shortest exact round-trip; GLSL floats need a '.'.
    s = repr(value)
    if "." not in s:
        if "e" in s:
            mantissa, exponent = s.split("e", 1)
            s = f"{mantissa}.0e{exponent}"
        else:
            s = f"{s}.0"
    return s


def _contains_div(e: Expression) -> bool:
    if e.op == "div":
        return True
    return any(_contains_div(a) for a in e.args)


def emit_shader(e: Expression) -> ShaderArtifact:
    """Emit the full vertex shader displacing all three coordinates by the tree."""
    expr_text = emit_expression(e)
    lines = [
        "uniform mat4 projectionMatrix;",
        "uniform mat4 modelViewMatrix;",
        "uniform float time;",
        "attribute vec3 position;",
    ]
    if _contains_div(e):
        lines.append(PDIV_HELPER)
    lines += [
        "void main() {",
        "    float x = position.x;",
        "    float y = position.y;",
        "    float z = position.z;",
        "    float t = time;",
        f"    float d = {expr_text};",
        "    vec3 p = position + vec3(d, d, d);",
        "    gl_Position = projectionMatrix * modelViewMatrix * vec4(p, 1.0);",
        "}",
    ]
    return ShaderArtifact(
        glsl_source="\n".join(lines) + "\n",
        expr_text=expr_text,
        dynamic=is_dynamic(e),
        expr_sexpr=serialize(e),
    )
