"""Exact Pareto sets for small instances.

``enumerate_pareto`` visits all (n-1)! circuits; ``dp_pareto`` runs a
bi-objective Held-Karp labelling over (visited set, last vertex) states.
The two share no code beyond the final non-dominated sweep, so each serves
as an oracle for the other.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .dominance import Front
from .instance import Instance, Tour

ENUM_LIMIT = 13
DP_LIMIT = 16
DP_MEMORY_BYTES = 1 << 30

class ExactRefusal(ValueError):
    """The instance is too large for the requested exact method."""


@njit(cache=True)
def _enumerate(w1, w2, width):
    """Depth-first assignment of succ[0], succ[1], ... in increasing order.

    Partial assignments form vertex-disjoint paths; ``start_of``/``end_of``
    map each path end to its start and back so an arc closing a path into a
    cycle is refused until the last vertex.
    """
    n = w1.shape[0]
    best2 = np.full(width, np.iinfo(np.int64).max, dtype=np.int64)
    rep = np.zeros((width, n), dtype=np.int64)
    succ = np.zeros(n, dtype=np.int64)
    has_pred = np.zeros(n, dtype=np.bool_)
    start_of = np.arange(n)
    end_of = np.arange(n)
    nxt = np.zeros(n + 1, dtype=np.int64)
    saved_end = np.zeros(n, dtype=np.int64)
    saved_start = np.zeros(n, dtype=np.int64)
    seg_s = np.zeros(n, dtype=np.int64)
    seg_e = np.zeros(n, dtype=np.int64)
    acc1 = np.zeros(n + 1, dtype=np.int64)
    acc2 = np.zeros(n + 1, dtype=np.int64)
    v = 0
    while v >= 0:
        if v == n:
            d1, d2 = acc1[n], acc2[n]
            if d2 < best2[d1]:
                best2[d1] = d2
                for i in range(n):
                    rep[d1, i] = succ[i]
            v -= 1
            _undo(v, succ, has_pred, start_of, end_of, saved_end, saved_start, seg_s, seg_e)
            continue
        s = start_of[v]
        u = nxt[v]
        while u < n and (u == v or has_pred[u] or (u == s and v != n - 1)):
            u += 1
        if u == n:
            nxt[v] = 0
            v -= 1
            if v >= 0:
                _undo(v, succ, has_pred, start_of, end_of, saved_end, saved_start, seg_s, seg_e)
            continue
        nxt[v] = u + 1
        e = end_of[u]
        seg_s[v] = s
        seg_e[v] = e
        saved_end[v] = end_of[s]
        saved_start[v] = start_of[e]
        end_of[s] = e
        start_of[e] = s
        has_pred[u] = True
        succ[v] = u
        acc1[v + 1] = acc1[v] + w1[v, u]
        acc2[v + 1] = acc2[v] + w2[v, u]
        v += 1
    return best2, rep


@njit(cache=True)
def _undo(v, succ, has_pred, start_of, end_of, saved_end, saved_start, seg_s, seg_e):
    has_pred[succ[v]] = False
    end_of[seg_s[v]] = saved_end[v]
    start_of[seg_e[v]] = saved_start[v]


def _upper(w: np.ndarray) -> int:
    n = w.shape[0]
    return int(np.where(~np.eye(n, dtype=bool), w, 0).max(axis=1).sum())


def _sweep(best2: np.ndarray):
    """Non-dominated (d1, d2) pairs from a d1-indexed table of minimal d2."""
    out = []
    cur = None
    for d1 in np.flatnonzero(best2 < np.iinfo(np.int64).max // 8):
        d2 = int(best2[d1])
        if cur is None or d2 < cur:
            out.append((int(d1), d2))
            cur = d2
    return out


def enumerate_pareto(inst: Instance, limit: int = ENUM_LIMIT) -> Front:
    """Exact Pareto front by complete enumeration of Hamiltonian circuits.

    Circuits are generated in lexicographic order of their successor arrays,
    so each vector's representative is the smallest tour attaining it.
    """
    if inst.n > limit:
        raise ExactRefusal(
            f"complete enumeration of {inst.n - 1}! circuits refused: n={inst.n} exceeds limit {limit}")
    w1 = np.ascontiguousarray(inst.weights(1))
    w2 = np.ascontiguousarray(inst.weights(2))
    best2, rep = _enumerate(w1, w2, _upper(w1) + 1)
    return Front([((d1, d2), Tour(tuple(rep[d1].tolist()))) for d1, d2 in _sweep(best2)])


@njit(cache=True)
def _held_karp(w1, w2, width):
    n = w1.shape[0]
    full = (1 << (n - 1)) - 1
    inf = np.iinfo(np.int64).max // 4
    dp = np.full((full + 1, n, width), inf, dtype=np.int64)
    for v in range(1, n):
        dp[1 << (v - 1), v, w1[0, v]] = w2[0, v]
    for mask in range(1, full + 1):
        for v in range(1, n):
            if not (mask >> (v - 1)) & 1:
                continue
            for a in range(width):
                b = dp[mask, v, a]
                if b >= inf:
                    continue
                for u in range(1, n):
                    if (mask >> (u - 1)) & 1:
                        continue
                    nm = mask | (1 << (u - 1))
                    na = a + w1[v, u]
                    nb = b + w2[v, u]
                    if na < width and nb < dp[nm, u, na]:
                        dp[nm, u, na] = nb
    best2 = np.full(width + 1, inf, dtype=np.int64)
    for v in range(1, n):
        for a in range(width):
            b = dp[full, v, a]
            if b >= inf:
                continue
            na = a + w1[v, 0]
            nb = b + w2[v, 0]
            if na <= width and nb < best2[na]:
                best2[na] = nb
    return dp, best2


def _backtrack(dp, w1, w2, d1, d2):
    """Recover one circuit attaining (d1, d2) from the Held-Karp table."""
    n = w1.shape[0]
    mask = (1 << (n - 1)) - 1
    v = next(v for v in range(1, n)
             if d1 - w1[v, 0] >= 0 and dp[mask, v, d1 - w1[v, 0]] == d2 - w2[v, 0])
    a, b = d1 - w1[v, 0], d2 - w2[v, 0]
    order = [v]
    while mask != (1 << (v - 1)):
        prev_mask = mask & ~(1 << (v - 1))
        for p in range(1, n):
            if not (prev_mask >> (p - 1)) & 1:
                continue
            pa, pb = a - w1[p, v], b - w2[p, v]
            if pa >= 0 and dp[prev_mask, p, pa] == pb:
                break
        else:  # pragma: no cover - table is consistent by construction
            raise RuntimeError("Held-Karp backtrack failed")
        mask, v, a, b = prev_mask, p, pa, pb
        order.append(v)
    order.append(0)
    return Tour.from_order(reversed(order))


def dp_pareto(inst: Instance, limit: int = DP_LIMIT) -> Front:
    """Exact Pareto front via bi-objective Held-Karp labelling.

    Labels per state are kept as a dense table indexed by the first
    objective, holding the least second objective; only dominance inside a
    state is used for pruning.
    """
    if inst.n > limit:
        raise ExactRefusal(f"dynamic programming refused: n={inst.n} exceeds limit {limit}")
    w1 = np.ascontiguousarray(inst.weights(1))
    w2 = np.ascontiguousarray(inst.weights(2))
    width = _upper(w1) + 1
    need = (1 << (inst.n - 1)) * inst.n * width * 8
    if need > DP_MEMORY_BYTES:
        raise ExactRefusal(f"dynamic programming refused: table needs {need / 2**30:.1f} GiB")
    dp, best2 = _held_karp(w1, w2, width)
    return Front([((d1, d2), _backtrack(dp, w1, w2, d1, d2)) for d1, d2 in _sweep(best2)])
