"""From expression tree to ready-to-compile GLSL vertex shader.

Run with:  python demos/02_shader_codegen.py
"""

from evoshader import deserialize, emit_expression, emit_shader

# The displacement scalar is added to all three vertex coordinates, so a
# single tree deforms the whole mesh.
tree = deserialize("(div x (add x z))")
print("infix form:", emit_expression(tree))
print()
print(emit_shader(tree).glsl_source)

# A tree that references t animates: the shader's `time` uniform drives it.
waves = deserialize("(mul (const 0.2) (sin (add (mul x (const 0.5)) t)))")
artifact = emit_shader(waves)
print("dynamic:", artifact.dynamic)
print(artifact.glsl_source)

# Trees without division skip the pdiv helper entirely.
plain = deserialize("(add x y)")
assert "pdiv" not in emit_shader(plain).glsl_source
print("no division -> no pdiv helper in the emitted source")
