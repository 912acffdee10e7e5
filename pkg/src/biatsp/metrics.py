"""Generational distance metrics and the paired Wilcoxon signed-rank test."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _points(front) -> np.ndarray:
    if hasattr(front, "as_array"):
        pts = front.as_array()
    else:
        pts = np.array([[float(a), float(b)] for a, b in front], dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("metric needs non-empty point sets")
    return pts


def _nearest(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    diff = src[:, None, :] - dst[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2)).min(axis=1)


def gd(A, Pstar) -> float:
    """``(1/|A|) * sqrt(sum mu_i^2)``, ``mu_i`` the distance from ``A_i`` to ``P*``."""
    a, p = _points(A), _points(Pstar)
    mu = _nearest(a, p)
    return float(math.sqrt(float((mu ** 2).sum())) / len(a))


def igd(A, Pstar) -> float:
    """Same as :func:`gd` with the roles of the approximation and reference swapped."""
    a, p = _points(A), _points(Pstar)
    mu = _nearest(p, a)
    return float(math.sqrt(float((mu ** 2).sum())) / len(p))


@dataclass
class WilcoxonResult:
    statistic: float
    pvalue: float
    significant: bool
    n: int
    conclusive: bool = True
    method: str = "exact"


MIN_PAIRS = 6


def _exact_pvalue(doubled_ranks: list[int], w_doubled: int) -> float:
    # null distribution of the positive-rank sum: each rank is + or - with prob 1/2
    total = sum(doubled_ranks)
    counts = np.zeros(total + 1, dtype=object)
    counts[0] = 1
    for r in doubled_ranks:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[:total + 1 - r]
        counts = counts + shifted
    tail = sum(counts[: w_doubled + 1])
    p = 2 * tail / (2 ** len(doubled_ranks))
    return float(min(1.0, p))


def wilcoxon_signed_rank(x, y, alpha: float = 0.05, exact_below: int = 20) -> WilcoxonResult:
    """Paired two-sided signed-rank test.

    Zero differences are dropped and tied magnitudes receive mid-ranks.  For
    fewer than ``exact_below`` non-zero pairs the p-value comes from the
    exact permutation distribution of the (tie-aware) rank sums; otherwise a
    normal approximation with tie-corrected variance is used.  With fewer
    than six non-zero pairs the result is flagged inconclusive.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"paired samples differ in length: {len(x)} vs {len(y)}")
    d = x - y
    d = d[d != 0]
    n = len(d)
    if n < MIN_PAIRS:
        return WilcoxonResult(math.nan, 1.0, False, n, conclusive=False, method="none")

    mags = np.abs(d)
    order = np.argsort(mags, kind="stable")
    ranks = np.empty(n)
    sorted_mags = mags[order]
    i = 0
    tie_term = 0.0
    while i < n:
        j = i
        while j + 1 < n and sorted_mags[j + 1] == sorted_mags[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j + 2) / 2.0
        t = j - i + 1
        tie_term += t ** 3 - t
        i = j + 1
    w_plus = float(ranks[d > 0].sum())
    w_minus = float(ranks[d < 0].sum())
    w = min(w_plus, w_minus)

    if n < exact_below:
        doubled = [int(round(2 * r)) for r in ranks]
        p = _exact_pvalue(doubled, int(round(2 * w)))
        method = "exact"
    else:
        mean = n * (n + 1) / 4.0
        var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0
        z = (w - mean) / math.sqrt(var)
        p = min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))
        method = "normal"
    return WilcoxonResult(w, p, p < alpha, n, conclusive=True, method=method)
