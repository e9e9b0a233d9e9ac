"""Tour of the expression-tree core: building, evaluating, breeding.

Run with:  python demos/01_expression_trees.py
"""

from random import Random

from evoshader import (
    EvalPoint,
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

# Trees read and write as prefix s-expressions.  This one computes
# x / (x + z) with protected division.
tree = deserialize("(div x (add x z))")
print("tree:         ", serialize(tree))
print("depth/size:   ", depth(tree), "/", size(tree))
print("animates:     ", is_dynamic(tree))

# Evaluate at a single vertex position (x, y, z) and time t.
point = EvalPoint(x=1.0, y=0.0, z=1.0, t=0.0)
print("value at", (point.x, point.y, point.z, point.t), "->", evaluate(tree, point))

# Division by zero is protected: the guard returns 1.0 instead of blowing up.
tricky = deserialize("(div (const 0.5) (sub x x))")
print("0.5 / (x - x) ->", evaluate(tricky, point))

# Random trees come from either the 'grow' or the 'full' method.
rng = Random(2)
for method in ("grow", "full"):
    e = random_tree(method, 4, rng)
    print(f"{method:4} depth<=4:", serialize(e))

# Crossover swaps subtrees between two parents; mutation regrows one subtree.
a = random_tree("grow", 4, rng)
b = random_tree("grow", 4, rng)
child_a, child_b = crossover(a, b, rng)
print("parent a:     ", serialize(a))
print("parent b:     ", serialize(b))
print("offspring a:  ", serialize(child_a))
print("offspring b:  ", serialize(child_b))
print("mutated a:    ", serialize(mutate(a, rng)))

# Everything is deterministic given the random stream: same seed, same trees.
assert serialize(random_tree("grow", 5, Random(7))) == serialize(
    random_tree("grow", 5, Random(7))
)
print("determinism:   same seed reproduces the same tree")
