from random import Random

from infix_oracle import evaluate_infix

from evoshader.codegen import PDIV_HELPER, emit_expression, emit_shader
from evoshader.expr import (
    EvalPoint,
    Expression,
    const,
    deserialize,
    evaluate,
    random_tree,
    serialize,
    var,
)

SAMPLE_TREE = deserialize("(div x (add x z))")


class TestEmitExpression:
    def test_div_becomes_pdiv(self):
        assert emit_expression(SAMPLE_TREE) == "pdiv(x, (x + z))"

    def test_neg_wraps_fully(self):
        assert emit_expression(Expression("neg", (const(0.5),))) == "(-(0.5))"

    def test_trig_calls(self):
        assert emit_expression(Expression("sin", (var("t"),))) == "sin(t)"
        assert emit_expression(Expression("cos", (var("y"),))) == "cos(y)"

    def test_binary_operators_parenthesize(self):
        e = deserialize("(mul (add x y) (sub z t))")
        assert emit_expression(e) == "((x + y) * (z - t))"

    def test_constants_carry_decimal_point(self):
        assert emit_expression(const(0.5)) == "0.5"
        assert emit_expression(const(1e-07)) == "1.0e-07"
        assert emit_expression(const(-0.25)) == "-0.25"

    def test_deterministic(self):
        e = random_tree("grow", 6, Random(4))
        assert emit_expression(e) == emit_expression(e)


class TestEmitShader:
    def test_displacement_lines(self):
        src = emit_shader(SAMPLE_TREE).glsl_source
        assert "float d = pdiv(x, (x + z));" in src
        assert "vec3 p = position + vec3(d, d, d);" in src

    def test_single_displacement_statement(self):
        src = emit_shader(SAMPLE_TREE).glsl_source
        assert src.count("vec3 p = position + vec3(d, d, d);") == 1

    def test_zero_constant_is_identity_transformation(self):
        src = emit_shader(const(0.0)).glsl_source
        assert "float d = 0.0;" in src

    def test_pdiv_helper_present_iff_div(self):
        with_div = emit_shader(SAMPLE_TREE).glsl_source
        without_div = emit_shader(deserialize("(add x (sin t))")).glsl_source
        assert PDIV_HELPER in with_div
        assert "pdiv" not in without_div

    def test_fixed_declarations(self):
        src = emit_shader(var("x")).glsl_source
        for line in (
            "uniform mat4 projectionMatrix;",
            "uniform mat4 modelViewMatrix;",
            "uniform float time;",
            "attribute vec3 position;",
            "gl_Position = projectionMatrix * modelViewMatrix * vec4(p, 1.0);",
        ):
            assert line in src

    def test_artifact_metadata(self):
        art = emit_shader(deserialize("(sin t)"))
        assert art.dynamic is True
        assert art.expr_sexpr == "(sin t)"
        assert art.expr_text == "sin(t)"
        art = emit_shader(SAMPLE_TREE)
        assert art.dynamic is False

    def test_balanced_delimiters(self):
        for seed in range(100):
            src = emit_shader(random_tree("grow", 7, Random(seed))).glsl_source
            assert src.count("(") == src.count(")")
            assert src.count("{") == src.count("}")

    def test_deterministic_source(self):
        e = random_tree("full", 5, Random(9))
        assert emit_shader(e).glsl_source == emit_shader(e).glsl_source


class TestInterpreterAgreement:
    def test_oracle_matches_interpreter_exactly(self):
        rng = Random(2024)
        for _ in range(200):
            e = random_tree("grow", 6, rng)
            text = emit_expression(e)
            for _ in range(10):
                p = EvalPoint(
                    rng.uniform(-3, 3),
                    rng.uniform(-3, 3),
                    rng.uniform(-3, 3),
                    rng.uniform(0, 5),
                )
                assert evaluate_infix(text, p.x, p.y, p.z, p.t) == evaluate(e, p), serialize(e)

    def test_oracle_catches_missing_parens(self):
        # Sanity check that the oracle applies standard precedence: the
        # unparenthesized text evaluates differently from the tree.
        e = deserialize("(mul (add x y) z)")
        assert evaluate_infix("x + y * z", 1.0, 2.0, 3.0, 0.0) != evaluate(
            e, EvalPoint(1.0, 2.0, 3.0, 0.0)
        )
        assert evaluate_infix(emit_expression(e), 1.0, 2.0, 3.0, 0.0) == evaluate(
            e, EvalPoint(1.0, 2.0, 3.0, 0.0)
        )
