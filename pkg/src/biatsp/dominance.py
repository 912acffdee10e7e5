"""Pareto relation, non-dominated filtering and NSGA-II ranking for two objectives."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .instance import Instance, Tour


def dominates(a, b) -> bool:
    """``a`` is no worse than ``b`` in both objectives and differs from it."""
    return a[0] <= b[0] and a[1] <= b[1] and (a[0] < b[0] or a[1] < b[1])


def nondominated_indices(vectors) -> list[int]:
    """Indices of vectors not dominated by any other; equal vectors all survive."""
    order = sorted(range(len(vectors)), key=lambda i: (vectors[i][0], vectors[i][1]))
    keep = []
    best2 = None
    k = 0
    while k < len(order):
        # block of identical vectors
        v = vectors[order[k]]
        j = k
        while j < len(order) and vectors[order[j]][0] == v[0] and vectors[order[j]][1] == v[1]:
            j += 1
        if best2 is None or v[1] < best2:
            keep.extend(order[k:j])
            best2 = v[1]
        k = j
    return sorted(keep)


@dataclass
class Front:
    """Distinct non-dominated objective vectors, each with one representative tour."""

    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def vectors(self) -> list[tuple]:
        return [v for v, _ in self.entries]

    def vector_set(self) -> set[tuple]:
        return set(self.vectors())

    def as_array(self) -> np.ndarray:
        return np.array([[float(a), float(b)] for a, b in self.vectors()], dtype=float).reshape(-1, 2)

    def sorted(self) -> "Front":
        return Front(sorted(self.entries, key=lambda e: (e[0][0], e[0][1])))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d1", "d2", "tour"])
        for v, t in self.sorted():
            w.writerow([_fmt_num(v[0]), _fmt_num(v[1]), "" if t is None else str(t)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Front":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0]] != ["d1", "d2", "tour"]:
            raise ValueError("front CSV must start with header 'd1,d2,tour'")
        entries = []
        for lineno, row in enumerate(rows[1:], 2):
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"line {lineno}: expected 3 fields, got {len(row)}")
            v = (_parse_num(row[0]), _parse_num(row[1]))
            t = Tour.from_order(int(x) for x in row[2].split("-")) if row[2].strip() else None
            entries.append((v, t))
        return cls(entries)


def _fmt_num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _parse_num(s: str):
    s = s.strip()
    if "/" in s:
        return Fraction(s)
    try:
        return int(s)
    except ValueError:
        return float(s)


def pareto_filter(points) -> Front:
    """Non-dominated distinct vectors of ``points`` (pairs of vector and payload).

    Among equal vectors the first one in input order keeps its payload.
    """
    points = list(points)
    seen = {}
    for v, payload in points:
        key = (v[0], v[1])
        if key not in seen:
            seen[key] = payload
    keys = list(seen)
    return Front([(keys[i], seen[keys[i]]) for i in nondominated_indices(keys)])


@dataclass
class Member:
    tour: Tour
    vector: tuple
    rank: int = 0
    crowding: float = 0.0


def _domination_matrix(F: np.ndarray) -> np.ndarray:
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    return le & lt


def nondominated_ranks(F) -> np.ndarray:
    """Fast non-dominated sort: rank 1 is the non-dominated level.

    Uses domination counts and the per-member dominated sets, i.e. the
    O(mN^2) procedure of NSGA-II, with the sets held as a boolean matrix.
    """
    F = np.asarray(F, dtype=float).reshape(-1, 2)
    n = len(F)
    ranks = np.zeros(n, dtype=np.int64)
    if n == 0:
        return ranks
    dom = _domination_matrix(F)
    count = dom.sum(axis=0)
    current = np.flatnonzero(count == 0)
    r = 1
    while current.size:
        ranks[current] = r
        count = count - dom[current].sum(axis=0)
        count[current] = -1
        current = np.flatnonzero(count == 0)
        r += 1
    return ranks


def crowding_distances(level) -> list[float]:
    """Crowding distance of each member of one non-domination level."""
    F = np.asarray(level, dtype=float).reshape(-1, 2)
    n = len(F)
    dist = np.zeros(n)
    if n <= 2:
        return [math.inf] * n
    for m in range(F.shape[1]):
        order = np.argsort(F[:, m], kind="stable")
        col = F[order, m]
        dist[order[0]] = math.inf
        dist[order[-1]] = math.inf
        span = col[-1] - col[0]
        if span == 0:
            continue
        dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist.tolist()


def rank_and_crowd(F) -> tuple[np.ndarray, np.ndarray]:
    F = np.asarray(F, dtype=float).reshape(-1, 2)
    ranks = nondominated_ranks(F)
    crowd = np.zeros(len(F))
    for r in np.unique(ranks):
        idx = np.flatnonzero(ranks == r)
        crowd[idx] = crowding_distances(F[idx])
    return ranks, crowd


def nondominated_sort(pop) -> list[Member]:
    """Rank and crowding-annotate ``(tour, vector)`` pairs; duplicates are kept."""
    pop = list(pop)
    if not pop:
        return []
    ranks, crowd = rank_and_crowd([v for _, v in pop])
    return [Member(t, v, int(r), float(c)) for (t, v), r, c in zip(pop, ranks, crowd)]


def cardinality_bound(inst: Instance) -> int:
    """Upper bound ``min_i (UB_i - LB_i + 1)`` on the Pareto set size.

    ``LB_i``/``UB_i`` sum the cheapest/dearest outgoing arc of every vertex.
    """
    off = ~np.eye(inst.n, dtype=bool)
    best = None
    for c in (1, 2):
        w = inst.weights(c)
        lo = int(np.where(off, w, np.iinfo(np.int64).max).min(axis=1).sum())
        hi = int(np.where(off, w, 0).max(axis=1).sum())
        span = hi - lo + 1
        best = span if best is None else min(best, span)
    return best
