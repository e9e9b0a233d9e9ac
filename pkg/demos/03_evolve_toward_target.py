"""Headless evolution: a scripted selector chases a target expression.

The selector stands in for the human of the interactive loop: at every
display it picks the candidate whose behavior over the sample lattice is
closest to the target.  Thanks to elitism of the pick, the best displayed
distance can only go down.

Run with:  python demos/03_evolve_toward_target.py
"""

from evoshader import (
    EvolutionParams,
    default_lattice,
    deserialize,
    distance,
    init_population,
    serialize,
    step,
)

TARGET = deserialize("(add (sin x) z)")

params = EvolutionParams(population_size=200, subset_size=9, seed=5)
lattice = params.lattice
session = init_population(params)

print(f"target: {serialize(TARGET)}")
print(f"{'gen':>4}  {'best distance':>14}  best candidate")

for round_number in range(16):
    dists = [
        distance(session.population[idx].expr, TARGET, lattice)
        for idx in session.display
    ]
    best_slot = min(range(len(dists)), key=lambda s: (dists[s], s))
    best_expr = session.population[session.display[best_slot]].expr
    print(f"{session.generation:>4}  {dists[best_slot]:>14.4f}  {serialize(best_expr)}")
    if dists[best_slot] == 0.0:
        print("exact behavioral match found")
        break
    step(session, [best_slot], 1)
