"""Selection-driven breeding of displacement expressions.

A :class:`Session` owns one evolution run: a large population of candidate
trees, a small display subset shown to whoever is steering (a person in
the browser, or a scripted selector), and the references, the expressions
picked at the last display.  Fitness is similarity to the nearest
reference, measured as a capped least-squares difference over a fixed
sample lattice, so the run drifts toward whatever the user keeps picking.

Everything is deterministic given the session seed: population init,
breeding, display sampling and injected-candidate placement all draw from
the session's private random stream, and a session serializes to JSON
(including the stream state) so a trajectory can be checkpointed and
replayed byte for byte.

Sessions are plain state machines: callers must serialize mutating calls
per session (the HTTP layer does), while distinct sessions are fully
independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from random import Random

import numpy as np

from .expr import (
    MAX_DEPTH,
    EvalPoint,
    Expression,
    crossover,
    depth,
    deserialize,
    evaluate_many,
    mutate,
    random_tree,
    serialize,
)

DEFAULT_POPULATION_SIZE = 200
DEFAULT_SUBSET_SIZE = 9  # one per cell of the 3x3 display grid
DEFAULT_CROSSOVER_PROB = 0.9
DEFAULT_MUTATION_PROB = 0.2
DEFAULT_TOURNAMENT_SIZE = 3

# Ramped half-and-half initialization sweeps these depth limits.
_INIT_DEPTHS = (2, 3, 4, 5, 6)

# Per-point squared-error cap: keeps a single wild sample point from
# dominating (or overflowing) the distance sum.
SQERR_CAP = 1e6

_MAX_SEED = 2**64


class ValidationError(ValueError):
    """A precondition on parameters, slots or injected trees failed."""


@dataclass(frozen=True)
class SampleLattice:
    """The ordered evaluation points over which two trees are compared."""

    points: tuple[EvalPoint, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise ValidationError("sample lattice must be non-empty")

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        xs = np.array([p.x for p in self.points])
        ys = np.array([p.y for p in self.points])
        zs = np.array([p.z for p in self.points])
        ts = np.array([p.t for p in self.points])
        return xs, ys, zs, ts


def default_lattice() -> SampleLattice:
    """5x5x5 grid over [-1, 1]^3 crossed with t in {0, 1, 2}: 375 points."""
    axis = (-1.0, -0.5, 0.0, 0.5, 1.0)
    points = tuple(
        EvalPoint(x, y, z, t)
        for x in axis
        for y in axis
        for z in axis
        for t in (0.0, 1.0, 2.0)
    )
    return SampleLattice(points)


@dataclass
class EvolutionParams:
    population_size: int = DEFAULT_POPULATION_SIZE
    subset_size: int = DEFAULT_SUBSET_SIZE
    crossover_prob: float = DEFAULT_CROSSOVER_PROB
    mutation_prob: float = DEFAULT_MUTATION_PROB
    tournament_size: int = DEFAULT_TOURNAMENT_SIZE
    seed: int = 0
    lattice: SampleLattice = field(default_factory=default_lattice)

    def validate(self) -> None:
        if not isinstance(self.subset_size, int) or self.subset_size < 1:
            raise ValidationError("subset_size must be an integer >= 1")
        if not isinstance(self.population_size, int) or self.population_size < self.subset_size:
            raise ValidationError("population_size must be an integer >= subset_size")
        for name in ("crossover_prob", "mutation_prob"):
            p = getattr(self, name)
            if not isinstance(p, (int, float)) or not 0.0 <= p <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1]")
        if not isinstance(self.tournament_size, int) or self.tournament_size < 1:
            raise ValidationError("tournament_size must be an integer >= 1")
        if not isinstance(self.seed, int) or not 0 <= self.seed < _MAX_SEED:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if not self.lattice.points:
            raise ValidationError("sample lattice must be non-empty")


@dataclass
class Individual:
    expr: Expression
    fitness: float | None = None


@dataclass
class Session:
    id: str
    params: EvolutionParams
    population: list[Individual]
    generation: int
    display: list[int]
    references: list[Expression]
    rng: Random
    pinned: int | None = None


def init_population(params: EvolutionParams) -> Session:
    """Create a session with a ramped half-and-half population at generation 0.

    Depth limits 2..6 are swept in pairs, one grown and one full tree per
    limit, so tree shapes vary from the outset.  Fitness starts unset and
    the first display subset is a uniform random sample.
    """
    params.validate()
    rng = Random(params.seed)
    session_id = f"{rng.getrandbits(128):032x}"
    population = []
    for i in range(params.population_size):
        method = "grow" if i % 2 == 0 else "full"
        limit = _INIT_DEPTHS[(i // 2) % len(_INIT_DEPTHS)]
        population.append(Individual(random_tree(method, limit, rng)))
    session = Session(
        id=session_id,
        params=params,
        population=population,
        generation=0,
        display=[],
        references=[],
        rng=rng,
    )
    select_subset(session)
    return session


def distance(a: Expression, b: Expression, lattice: SampleLattice) -> float:
    """Capped least-squares difference between two trees over the lattice.

    Symmetric, non-negative, and zero for behaviorally identical trees; it
    is a premetric, not a metric (distinct trees can compute the same
    function and sit at distance zero).
    """
    xs, ys, zs, ts = lattice.arrays
    va = evaluate_many(a, xs, ys, zs, ts)
    vb = evaluate_many(b, xs, ys, zs, ts)
    d = va - vb
    return float(np.minimum(d * d, SQERR_CAP).sum())


def _nearest_fitness(v: np.ndarray, ref_values: list[np.ndarray]) -> float:
    best = min(
        float(np.minimum((v - rv) * (v - rv), SQERR_CAP).sum())
        for rv in ref_values
    )
    return 1.0 / (1.0 + best)


def _score_population(session: Session) -> None:
    """Recompute fitness for every individual against the current references.

    With references present, fitness is 1 / (1 + distance to the nearest
    reference), so 1.0 means behaviorally identical to a pick.  Without
    references fitness is left unset (pure drift).
    """
    refs = session.references
    if not refs:
        for ind in session.population:
            ind.fitness = None
        return
    xs, ys, zs, ts = session.params.lattice.arrays
    ref_values = [evaluate_many(r, xs, ys, zs, ts) for r in refs]
    for ind in session.population:
        v = evaluate_many(ind.expr, xs, ys, zs, ts)
        ind.fitness = _nearest_fitness(v, ref_values)


def assign_fitness(session: Session, selections: list[int]) -> Session:
    """Record the user's display picks as references and score the population.

    An empty selection keeps no references and scores everyone 1.0, so the
    next breeding step is uniform random drift.
    """
    seen: set[int] = set()
    for slot in selections:
        if not isinstance(slot, int) or isinstance(slot, bool):
            raise ValidationError(f"selection slot {slot!r} is not an integer")
        if not 0 <= slot < session.params.subset_size:
            raise ValidationError(
                f"selection slot {slot} out of range [0, {session.params.subset_size})"
            )
        if slot in seen:
            raise ValidationError(f"selection slot {slot} repeated")
        seen.add(slot)
    session.references = [
        session.population[session.display[slot]].expr for slot in selections
    ]
    if session.references:
        _score_population(session)
    else:
        for ind in session.population:
            ind.fitness = 1.0
    return session


def _tournament(session: Session) -> Individual:
    pop = session.population
    contestants = [
        session.rng.randrange(len(pop))
        for _ in range(session.params.tournament_size)
    ]
    best = contestants[0]
    for i in contestants[1:]:
        if _effective_fitness(pop[i]) > _effective_fitness(pop[best]) or (
            _effective_fitness(pop[i]) == _effective_fitness(pop[best]) and i < best
        ):
            best = i
    return pop[best]


def _effective_fitness(ind: Individual) -> float:
    return 0.0 if ind.fitness is None else ind.fitness


def next_generation(session: Session) -> Session:
    """Breed a full replacement population.

    References survive verbatim (elitism); the remaining slots come from
    tournament-selected parent pairs, crossed over with probability
    ``crossover_prob`` and each offspring mutated with probability
    ``mutation_prob``.  The new population is rescored against the same
    references (or left unscored when there are none).
    """
    params = session.params
    rng = session.rng
    new_pop: list[Individual] = [Individual(r) for r in session.references]
    while len(new_pop) < params.population_size:
        parent_a = _tournament(session)
        parent_b = _tournament(session)
        if rng.random() < params.crossover_prob:
            child_a, child_b = crossover(parent_a.expr, parent_b.expr, rng)
        else:
            child_a, child_b = parent_a.expr, parent_b.expr
        for child in (child_a, child_b):
            if rng.random() < params.mutation_prob:
                child = mutate(child, rng)
            if len(new_pop) < params.population_size:
                new_pop.append(Individual(child))
    session.population = new_pop
    session.generation += 1
    _score_population(session)
    return session


def select_subset(session: Session) -> list[int]:
    """Choose and store the next display subset; returns the indices.

    Scored populations display the fittest individuals first (ties to the
    lower index), skipping candidates whose serialized form duplicates one
    already on screen; when deduplication runs out of distinct trees the
    remaining cells fall back to plain fitness order.  Unscored populations
    (generation 0, or after a drift step) display a uniform random sample.
    A pinned index from :func:`inject` is always included, once.
    """
    pop = session.population
    k = session.params.subset_size
    chosen: list[int] = []
    if session.pinned is not None:
        chosen.append(session.pinned)
        session.pinned = None
    if all(ind.fitness is None for ind in pop):
        remaining = [i for i in range(len(pop)) if i not in chosen]
        chosen += session.rng.sample(remaining, k - len(chosen))
    else:
        order = sorted(range(len(pop)), key=lambda i: (-_effective_fitness(pop[i]), i))
        seen = {serialize(pop[i].expr) for i in chosen}
        for i in order:
            if len(chosen) >= k:
                break
            if i in chosen:
                continue
            key = serialize(pop[i].expr)
            if key in seen:
                continue
            seen.add(key)
            chosen.append(i)
        # Deduplication exhausted the distinct trees; fill by fitness order.
        if len(chosen) < k:
            for i in order:
                if len(chosen) >= k:
                    break
                if i not in chosen:
                    chosen.append(i)
    session.display = chosen
    return chosen


def step(session: Session, selections: list[int], generations: int = 1) -> list[int]:
    """One interaction round: score selections, breed, refresh the display.

    Intermediate generations are rescored against the same references, so a
    multi-generation step keeps chasing the picks made at its start.
    """
    if not isinstance(generations, int) or generations < 1:
        raise ValidationError("generations must be an integer >= 1")
    assign_fitness(session, selections)
    for _ in range(generations):
        next_generation(session)
    return select_subset(session)


def inject(session: Session, e: Expression) -> Session:
    """Place an externally supplied tree into the population.

    The tree replaces a uniformly chosen non-displayed individual and its
    slot is pinned so the next display subset is guaranteed to show it.
    """
    if depth(e) > MAX_DEPTH:
        raise ValidationError(f"injected tree exceeds depth {MAX_DEPTH}")
    on_display = set(session.display)
    candidates = [i for i in range(len(session.population)) if i not in on_display]
    if not candidates:  # population == display; nowhere hidden to put it
        candidates = list(range(len(session.population)))
    idx = candidates[session.rng.randrange(len(candidates))]
    session.population[idx] = Individual(e)
    if session.references:
        xs, ys, zs, ts = session.params.lattice.arrays
        ref_values = [evaluate_many(r, xs, ys, zs, ts) for r in session.references]
        v = evaluate_many(e, xs, ys, zs, ts)
        session.population[idx].fitness = _nearest_fitness(v, ref_values)
    session.pinned = idx
    return session


# --- JSON checkpointing ------------------------------------------------

def session_to_json(session: Session) -> dict:
    """Plain-dict snapshot of the full session state, including the RNG."""
    state = session.rng.getstate()
    return {
        "id": session.id,
        "params": {
            "population_size": session.params.population_size,
            "subset_size": session.params.subset_size,
            "crossover_prob": session.params.crossover_prob,
            "mutation_prob": session.params.mutation_prob,
            "tournament_size": session.params.tournament_size,
            "seed": session.params.seed,
            "lattice": [[p.x, p.y, p.z, p.t] for p in session.params.lattice.points],
        },
        "population": [
            {"expr": serialize(ind.expr), "fitness": ind.fitness}
            for ind in session.population
        ],
        "generation": session.generation,
        "display": list(session.display),
        "references": [serialize(r) for r in session.references],
        "pinned": session.pinned,
        "rng_state": [state[0], list(state[1]), state[2]],
    }


def session_from_json(doc: dict) -> Session:
    p = doc["params"]
    params = EvolutionParams(
        population_size=p["population_size"],
        subset_size=p["subset_size"],
        crossover_prob=p["crossover_prob"],
        mutation_prob=p["mutation_prob"],
        tournament_size=p["tournament_size"],
        seed=p["seed"],
        lattice=SampleLattice(tuple(EvalPoint(*pt) for pt in p["lattice"])),
    )
    rng = Random()
    version, internal, gauss = doc["rng_state"]
    rng.setstate((version, tuple(internal), gauss))
    return Session(
        id=doc["id"],
        params=params,
        population=[
            Individual(deserialize(ind["expr"]), ind["fitness"])
            for ind in doc["population"]
        ],
        generation=doc["generation"],
        display=list(doc["display"]),
        references=[deserialize(r) for r in doc["references"]],
        rng=rng,
        pinned=doc["pinned"],
    )
