"""Generational NSGA-II loop for the bicriteria ATSP."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from ..dominance import Front, pareto_filter, rank_and_crowd
from ..instance import Instance, Tour, check_tour, make_rng
from ..metrics import gd, igd
from .operators import DEC, DPX, recombine, three_opt_jump, tour_cost, weight_rows
from .seeding import seed_population


@dataclass
class MogaConfig:
    population_size: int = 50
    iterations: int = 1000
    tournament_size: int = 10
    mutation_probability: float = 0.1
    crossover: str = DEC
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 4:
            raise ValueError(f"population_size must be >= 4, got {self.population_size}")
        if not 2 <= self.tournament_size <= self.population_size:
            raise ValueError(
                f"tournament_size must lie in [2, {self.population_size}], got {self.tournament_size}")
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ValueError(f"mutation_probability must lie in [0, 1], got {self.mutation_probability}")
        if self.crossover not in (DEC, DPX):
            raise ValueError(f"crossover must be {DEC!r} or {DPX!r}, got {self.crossover!r}")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")


@dataclass
class RunReport:
    config: MogaConfig
    front: Front
    initial_front: Front
    iterations: int
    wall_ms: float
    gd_trace: list[float] = field(default_factory=list)
    igd_trace: list[float] = field(default_factory=list)
    trace_iterations: list[int] = field(default_factory=list)
    reference_found_at: int | None = None

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "iterations": self.iterations,
            "front": [{"d1": v[0], "d2": v[1], "tour": str(t)} for v, t in self.front.sorted()],
            "initial_front": [[v[0], v[1]] for v in self.initial_front.sorted().vectors()],
            "gd_trace": self.gd_trace,
            "igd_trace": self.igd_trace,
            "trace_iterations": self.trace_iterations,
            "reference_found_at": self.reference_found_at,
            "wall_ms": round(self.wall_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _front_of(pop, F) -> Front:
    return pareto_filter(((int(F[i, 0]), int(F[i, 1])), pop[i]) for i in range(len(pop)))


def run(inst: Instance, cfg: MogaConfig, reference: Front | None = None, *,
        trace_every: int = 1, stop_on_reference: bool = False, validate: bool = False) -> RunReport:
    """Evolve a population and return the non-dominated set of the final one.

    With a ``reference`` front, GD and IGD of the population's non-dominated
    set are recorded every ``trace_every`` iterations (and at the start and
    end); ``stop_on_reference`` ends the run once IGD reaches zero.
    """
    if not inst.bicriteria:
        raise ValueError(f"instance {inst.name!r} has a single criterion")
    t0 = time.perf_counter()
    rng = make_rng(cfg.seed)
    N, s, pm = cfg.population_size, cfg.tournament_size, cfg.mutation_probability
    w1, w2 = weight_rows(inst)

    def score(t: Tour):
        if validate:
            check_tour(t.succ, inst.n)
        return tour_cost(w1, t.succ), tour_cost(w2, t.succ)

    pop = seed_population(inst, N, rng)
    F = np.array([score(t) for t in pop], dtype=np.int64)
    ranks, crowd = rank_and_crowd(F)
    initial = _front_of(pop, F)

    report = RunReport(cfg, initial, initial, 0, 0.0)

    def record(it: int, front: Front) -> bool:
        if reference is None:
            return False
        g, ig = gd(front, reference), igd(front, reference)
        report.gd_trace.append(g)
        report.igd_trace.append(ig)
        report.trace_iterations.append(it)
        if ig == 0.0 and report.reference_found_at is None:
            report.reference_found_at = it
        return ig == 0.0

    done = record(0, initial)
    it = 0
    while it < cfg.iterations and not (done and stop_on_reference):
        it += 1
        draws = rng.integers(0, N, size=(2 * N, s))
        winners = np.lexsort((-crowd[draws], ranks[draws]), axis=-1)[:, 0]
        parents = draws[np.arange(2 * N), winners].tolist()
        mutate = (rng.random(2 * N) < pm).tolist()
        offspring = []
        for k in range(N):
            a, b = pop[parents[2 * k]], pop[parents[2 * k + 1]]
            if mutate[2 * k]:
                a = three_opt_jump(a, inst, rng)
            if mutate[2 * k + 1]:
                b = three_opt_jump(b, inst, rng)
            offspring.append(recombine(a, b, inst, cfg.crossover, rng))
        union = pop + offspring
        FU = np.vstack([F, np.array([score(t) for t in offspring], dtype=np.int64)])
        ru, cu = rank_and_crowd(FU)
        keep = np.lexsort((-cu, ru))[:N]
        pop = [union[i] for i in keep.tolist()]
        F, ranks, crowd = FU[keep], ru[keep], cu[keep]
        if reference is not None and (it % trace_every == 0 or it == cfg.iterations):
            done = record(it, _front_of(pop, F))

    report.front = _front_of(pop, F)
    report.iterations = it
    if reference is not None and (not report.trace_iterations or report.trace_iterations[-1] != it):
        record(it, report.front)
    report.wall_ms = (time.perf_counter() - t0) * 1000.0
    return report
