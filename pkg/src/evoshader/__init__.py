"""Interactive genetic programming of vertex-shader displacement expressions.

The package breeds expression trees over vertex coordinates and time,
renders every candidate as a standalone GLSL vertex shader, and exposes
the loop over HTTP so a browser grid can drive selection.
"""

from .expr import (
    MAX_DEPTH,
    EvalPoint,
    Expression,
    crossover,
    depth,
    deserialize,
    evaluate,
    is_dynamic,
    mutate,
    random_tree,
    serialize,
    size,
)
from .codegen import ShaderArtifact, emit_expression, emit_shader
from .evolution import (
    EvolutionParams,
    Individual,
    SampleLattice,
    Session,
    assign_fitness,
    default_lattice,
    distance,
    init_population,
    inject,
    next_generation,
    select_subset,
    step,
)
from .store import MeshModel, Store, TransformationRecord

__all__ = [
    "MAX_DEPTH",
    "EvalPoint",
    "Expression",
    "crossover",
    "depth",
    "deserialize",
    "evaluate",
    "is_dynamic",
    "mutate",
    "random_tree",
    "serialize",
    "size",
    "ShaderArtifact",
    "emit_expression",
    "emit_shader",
    "EvolutionParams",
    "Individual",
    "SampleLattice",
    "Session",
    "assign_fitness",
    "default_lattice",
    "distance",
    "init_population",
    "inject",
    "next_generation",
    "select_subset",
    "step",
    "MeshModel",
    "Store",
    "TransformationRecord",
]
