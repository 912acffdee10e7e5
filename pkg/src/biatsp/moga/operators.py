"""Selection, Pareto-aware crossovers and mutations on successor-array tours."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..instance import Instance, Tour

DEC = "dec"
DPX = "dpx"


@lru_cache(maxsize=32)
def weight_rows(inst: Instance) -> tuple[list[list[int]], list[list[int]]]:
    """Weight matrices as nested lists; indexing these is much cheaper than numpy scalars."""
    return inst.weights(1).tolist(), inst.weights(2).tolist()


def tour_cost(rows: list[list[int]], succ) -> int:
    return sum(rows[v][u] for v, u in enumerate(succ))


def tournament_select(pop, s: int, rng: np.random.Generator):
    """Best of ``s`` uniform draws (with replacement) by rank, then crowding.

    ``pop`` holds members with ``rank`` and ``crowding`` attributes; among
    equally good draws the earliest one wins.
    """
    draws = rng.integers(0, len(pop), size=s)
    best = pop[draws[0]]
    for i in draws[1:]:
        m = pop[i]
        if m.rank < best.rank or (m.rank == best.rank and m.crowding > best.crowding):
            best = m
    return best


def _nondominated_arcs(v, heads, w1, w2):
    out = []
    for h in heads:
        a, b = w1[v][h], w2[v][h]
        if any((w1[v][g] <= a and w2[v][g] <= b and (w1[v][g] < a or w2[v][g] < b)) for g in heads):
            continue
        out.append(h)
    return out


def _pick(options, rng):
    if len(options) == 1:
        return options[0]
    return options[int(rng.integers(len(options)))]


def reconnect(p1: Tour, p2: Tour, inst: Instance, rng: np.random.Generator, mode: str,
              trace: list | None = None) -> Tour:
    """Copy the arcs shared by both parents, then join the path fragments.

    Starting from the fragment holding vertex 0, each step leaves the current
    fragment end along a non-dominated feasible arc to the start of an unused
    fragment.  ``mode`` selects the feasible arc set: parent arcs for
    ``"dec"``, arcs absent from both parents for ``"dpx"``.  When that set
    is empty at a step, every arc to an unused fragment start is allowed.
    ``trace`` (if given) receives ``(tail, head, fallback_used)`` per step.
    """
    s1, s2 = p1.succ, p2.succ
    n = len(s1)
    w1, w2 = weight_rows(inst)
    child = [-1] * n
    pred = [-1] * n
    for v in range(n):
        if s1[v] == s2[v]:
            child[v] = s1[v]
            pred[s1[v]] = v
    if -1 not in child:
        return Tour(tuple(child))

    end_of = {}
    for v in range(n):
        if pred[v] == -1:
            e = v
            while child[e] != -1:
                e = child[e]
            end_of[v] = e
    first = 0
    while pred[first] != -1:
        first = pred[first]
    unused = sorted(st for st in end_of if st != first)
    cur = end_of[first]
    while unused:
        parent_heads = (s1[cur], s2[cur])
        if mode == DEC:
            heads = [h for h in unused if h in parent_heads]
        elif mode == DPX:
            heads = [h for h in unused if h not in parent_heads]
        else:
            raise ValueError(f"unknown crossover {mode!r}")
        fallback = not heads
        if fallback:
            heads = unused
        h = _pick(_nondominated_arcs(cur, heads, w1, w2), rng)
        if trace is not None:
            trace.append((cur, h, fallback))
        child[cur] = h
        unused.remove(h)
        cur = end_of[h]
    child[cur] = first
    if trace is not None:
        trace.append((cur, first, True))
    return Tour(tuple(child))


def dec_pr_crossover(p1: Tour, p2: Tour, inst: Instance, rng: np.random.Generator) -> Tour:
    """Directed edge crossover with arc choice by the Pareto relation."""
    return reconnect(p1, p2, inst, rng, DEC)


def dpx_pr_crossover(p1: Tour, p2: Tour, inst: Instance, rng: np.random.Generator) -> Tour:
    """Distance-preserving crossover: fragments are joined with non-parent arcs."""
    return reconnect(p1, p2, inst, rng, DPX)


def shift_mutation(t: Tour, rng: np.random.Generator, vertex: int | None = None,
                   after: int | None = None) -> Tour:
    """Move one vertex to a new place in the circuit.

    ``vertex`` and ``after`` force the moved vertex and the vertex it is
    reinserted behind; reinsertion behind its old predecessor is the identity.
    """
    n = t.n
    if n < 4:
        return t
    order = t.order()
    if vertex is None:
        vertex = order[int(rng.integers(n))]
    rest = [v for v in order if v != vertex]
    if after is None:
        after = rest[int(rng.integers(n - 1))]
    elif after == vertex:
        raise ValueError("cannot reinsert a vertex behind itself")
    k = rest.index(after)
    return Tour.from_order(rest[:k + 1] + [vertex] + rest[k + 1:])


def recombine(p1: Tour, p2: Tour, inst: Instance, crossover: str, rng: np.random.Generator) -> Tour:
    """Crossover with a clone guard: an offspring equal to a parent is replaced
    by a shift mutation of a parent picked with probability 1/2."""
    child = reconnect(p1, p2, inst, rng, crossover)
    if child == p1 or child == p2:
        base = p1 if rng.random() < 0.5 else p2
        return shift_mutation(base, rng)
    return child


def _three_cuts(n: int, rng: np.random.Generator) -> tuple[int, int, int]:
    while True:
        c = rng.integers(1, n + 1, size=3).tolist()
        if c[0] != c[1] and c[1] != c[2] and c[0] != c[2]:
            c.sort()
            return c[0], c[1], c[2]


def three_opt_jump(t: Tour, inst: Instance, rng: np.random.Generator, budget: int | None = None,
                   info: dict | None = None) -> Tour:
    """Random jump in the orientation-preserving 3-opt neighbourhood.

    One objective is drawn with equal probability.  Up to ``budget`` (default
    ``n``) random segment exchanges are sampled; the first that strictly
    lowers that objective is applied, otherwise the last sample is.
    """
    n = t.n
    if n < 3:
        return t
    obj = int(rng.integers(2)) + 1
    rows = weight_rows(inst)[obj - 1]
    order = t.order()
    budget = n if budget is None else budget
    improved = False
    cuts = None
    for _ in range(budget):
        i, j, k = _three_cuts(n, rng)
        a, b = order[i - 1], order[i]
        c, d = order[j - 1], order[j]
        e, f = order[k - 1], order[k % n]
        delta = rows[a][d] + rows[e][b] + rows[c][f] - rows[a][b] - rows[c][d] - rows[e][f]
        cuts = (i, j, k)
        if delta < 0:
            improved = True
            break
    i, j, k = cuts
    new = order[:i] + order[j:k] + order[i:j] + order[k:]
    if info is not None:
        info.update(objective=obj, improved=improved, cuts=cuts)
    return Tour.from_order(new)
