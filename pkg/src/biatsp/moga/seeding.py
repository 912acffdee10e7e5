"""Assignment-patching heuristic used to seed the initial population."""
from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..instance import Instance, Tour


def _cycles(succ: list[int]) -> list[list[int]]:
    seen = [False] * len(succ)
    out = []
    for v in range(len(succ)):
        if seen[v]:
            continue
        cyc = []
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = succ[v]
        out.append(cyc)
    return out


def _best_patch(w, succ, ca, cb):
    """Cheapest exchange of one arc from each circuit: (cost increase, x, y)."""
    best = None
    for x in ca:
        sx = succ[x]
        for y in cb:
            sy = succ[y]
            delta = w[x][sy] + w[y][sx] - w[x][sx] - w[y][sy]
            if best is None or delta < best[0]:
                best = (delta, x, y)
    return best


def _apply(succ, x, y):
    succ[x], succ[y] = succ[y], succ[x]


def solve_assignment(w: np.ndarray) -> list[int]:
    """Min-cost assignment with self-loops forbidden; returns successor list."""
    rows, cols = linear_sum_assignment(w)
    succ = [0] * len(rows)
    for r, c in zip(rows.tolist(), cols.tolist()):
        succ[r] = c
    return succ


def assignment_patch(inst: Instance, criterion: int, strategy: str = "A") -> Tour:
    """Solve the assignment relaxation on one criterion and patch its circuits.

    Strategy ``"A"`` repeatedly merges the pair of circuits with the cheapest
    patch.  Strategy ``"B"`` grows the largest circuit, absorbing the others
    in decreasing size order through their cheapest patch.
    """
    w = inst.weights(criterion)
    succ = solve_assignment(w)
    wl = w.tolist()
    cycles = _cycles(succ)
    if strategy == "A":
        while len(cycles) > 1:
            best = None
            for a in range(len(cycles)):
                for b in range(a + 1, len(cycles)):
                    delta, x, y = _best_patch(wl, succ, cycles[a], cycles[b])
                    if best is None or delta < best[0]:
                        best = (delta, x, y, a, b)
            _, x, y, a, b = best
            _apply(succ, x, y)
            cycles[a] = cycles[a] + cycles[b]
            del cycles[b]
    elif strategy == "B":
        cycles.sort(key=lambda c: (-len(c), min(c)))
        main = cycles[0]
        for cyc in cycles[1:]:
            _, x, y = _best_patch(wl, succ, main, cyc)
            _apply(succ, x, y)
            main = main + cyc
    else:
        raise ValueError(f"unknown patching strategy {strategy!r}")
    return Tour(tuple(succ))


def random_tour(n: int, rng: np.random.Generator) -> Tour:
    rest = (rng.permutation(n - 1) + 1).tolist()
    return Tour.from_order([0] + rest)


def seed_population(inst: Instance, N: int, rng: np.random.Generator) -> list[Tour]:
    """Four patched assignment tours (two per criterion) plus ``N - 4`` random tours."""
    if N < 4:
        raise ValueError(f"population size must be >= 4, got {N}")
    pop = [assignment_patch(inst, c, s) for c in (1, 2) for s in ("A", "B")]
    pop.extend(random_tour(inst.n, rng) for _ in range(N - 4))
    return pop
