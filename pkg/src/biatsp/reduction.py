"""Pareto set reduction from relative-importance information about the criteria.

A quantum ``i > j`` with coefficient ``theta`` replaces criterion ``j`` by
``theta * D_i + (1 - theta) * D_j``; the entries that stay non-dominated
under the new criteria form the reduced set.  All arithmetic is carried out
with :class:`fractions.Fraction` so that threshold cases are decided exactly.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .dominance import Front, nondominated_indices

SINGLETON = "singleton"
UNCHANGED = "unchanged"
AT_MOST_P = "at_most_p"

DEFAULT_GRID = tuple(Fraction(k, 10) for k in range(1, 10))


def as_fraction(x) -> Fraction:
    """Exact value of ``x``; floats go through their shortest decimal repr (0.1 -> 1/10)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class Quantum:
    """Criterion ``more_important`` outranks ``less_important`` with coefficient ``theta``."""

    more_important: int
    less_important: int
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", as_fraction(self.theta))
        if {self.more_important, self.less_important} != {1, 2}:
            raise ValueError("a quantum relates criteria 1 and 2 in some order")
        if not 0 < self.theta < 1:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")

    @classmethod
    def from_weights(cls, more_important: int, less_important: int, w_more, w_less) -> "Quantum":
        """``theta = w_less / (w_more + w_less)`` for trade ``w_less`` of loss per ``w_more`` of gain."""
        w_more, w_less = as_fraction(w_more), as_fraction(w_less)
        if w_more <= 0 or w_less <= 0:
            raise ValueError("quantum weights must be positive")
        return cls(more_important, less_important, w_less / (w_more + w_less))

    def direction(self) -> tuple:
        """The trade-off vector ``y''``: ``theta - 1`` on the more important criterion."""
        y = [Fraction(0), Fraction(0)]
        y[self.more_important - 1] = self.theta - 1
        y[self.less_important - 1] = self.theta
        return tuple(y)


@dataclass(frozen=True)
class QuantumPair:
    """Both ``1 > 2`` (``theta_12``) and ``2 > 1`` (``theta_21``) at once."""

    theta_12: Fraction
    theta_21: Fraction

    def __post_init__(self):
        a, b = as_fraction(self.theta_12), as_fraction(self.theta_21)
        object.__setattr__(self, "theta_12", a)
        object.__setattr__(self, "theta_21", b)
        for t in (a, b):
            if not 0 < t < 1:
                raise ValueError(f"theta must lie in (0, 1), got {t}")
        if a + b >= 1:
            raise ValueError(
                f"inconsistent pair of quanta: theta_12 + theta_21 = {a + b} but must be < 1")


@dataclass(frozen=True)
class LineModel:
    """Fronts on ``p`` parallel lines ``y2 = a_i - k * y1``."""

    a: Fraction
    k: Fraction
    p: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "k", as_fraction(self.k))
        if self.a <= 0 or self.k <= 0 or self.p < 1:
            raise ValueError("line model needs a > 0, k > 0 and p >= 1")


def transform_single(v, q: Quantum) -> tuple:
    i, j = q.more_important - 1, q.less_important - 1
    out = [Fraction(v[0]), Fraction(v[1])]
    out[j] = q.theta * out[i] + (1 - q.theta) * out[j]
    return tuple(out)


def transform_double(v, qp: QuantumPair) -> tuple:
    d1, d2 = Fraction(v[0]), Fraction(v[1])
    return ((1 - qp.theta_21) * d1 + qp.theta_21 * d2,
            qp.theta_12 * d1 + (1 - qp.theta_12) * d2)


def _survivors(front: Front, images) -> Front:
    keep = nondominated_indices(images)
    return Front([front.entries[i] for i in keep])


def reduce_single(front: Front, q: Quantum) -> Front:
    """Entries of ``front`` that stay non-dominated after applying one quantum."""
    return _survivors(front, [transform_single(v, q) for v in front.vectors()])


def reduce_double(front: Front, qp: QuantumPair) -> Front:
    """Entries of ``front`` that stay non-dominated after applying both quanta."""
    return _survivors(front, [transform_double(v, qp) for v in front.vectors()])


def reduce(front: Front, theta12=None, theta21=None) -> Front:
    if theta12 is not None and theta21 is not None:
        return reduce_double(front, QuantumPair(theta12, theta21))
    if theta12 is not None:
        return reduce_single(front, Quantum(1, 2, theta12))
    if theta21 is not None:
        return reduce_single(front, Quantum(2, 1, theta21))
    return Front(list(front.entries))


def _threshold_met(k: Fraction, q) -> bool:
    t12 = k / (k + 1)
    t21 = 1 / (k + 1)
    if isinstance(q, QuantumPair):
        return q.theta_12 >= t12 or q.theta_21 >= t21
    if q.more_important == 1:
        return q.theta >= t12
    return q.theta >= t21


def predict_line_reduction(line: LineModel, q) -> str:
    """Predicted outcome of a reduction on a front lying on ``line``.

    A ``1 > 2`` coefficient of at least ``k/(k+1)`` or a ``2 > 1`` coefficient
    of at least ``1/(k+1)`` collapses a single line to one entry (or each
    of ``p`` lines to at most one); below both thresholds nothing changes.
    """
    if not _threshold_met(line.k, q):
        return UNCHANGED
    return SINGLETON if line.p == 1 else AT_MOST_P


def guaranteed_exclusion(front: Front, q: Quantum) -> bool:
    """Sufficient test that a quantum removes at least one entry.

    For ``1 > 2`` this checks, over ordered pairs with ``D2(c2) > D2(c1)``,
    whether ``(D1(c1) - D1(c2)) / (D2(c2) - D2(c1)) >= (1 - theta) / theta``;
    the ``2 > 1`` case swaps the criteria.
    """
    swap = q.more_important == 2
    vecs = [(v[1], v[0]) if swap else (v[0], v[1]) for v in front.vectors()]
    # cross-multiplied with theta = p/q, both sides scaled by a positive q
    p, r = q.theta.numerator, q.theta.denominator - q.theta.numerator
    for x1, y1 in vecs:
        for x2, y2 in vecs:
            if y2 > y1 and (x1 - x2) * p >= (y2 - y1) * r:
                return True
    return False


def exclusion_percentage(before: Front, after: Front) -> float:
    """Share of ``before`` entries missing from ``after``, in percent."""
    if len(before) == 0:
        raise ValueError("cannot compute exclusion percentage of an empty front")
    b, a = before.vector_set(), after.vector_set()
    if not a <= b:
        raise ValueError("reduced front is not a subset of the original front")
    return 100.0 * (len(b) - len(a)) / len(b)


@dataclass
class SweepRow:
    case: str
    theta12: Fraction | None
    theta21: Fraction | None
    n_before: int
    n_after: int
    excluded_pct: float


def theta_sweep(front: Front, grid=DEFAULT_GRID) -> list[SweepRow]:
    """Exclusion percentages for ``1 > 2``, ``2 > 1`` and every consistent pair on ``grid``."""
    grid = [as_fraction(t) for t in grid]
    for t in grid:
        if not 0 < t < 1:
            raise ValueError(f"grid value {t} outside (0, 1)")
    rows = []
    n = len(front)

    def row(case, t12, t21, reduced):
        rows.append(SweepRow(case, t12, t21, n, len(reduced), exclusion_percentage(front, reduced)))

    for t in grid:
        row("12", t, None, reduce_single(front, Quantum(1, 2, t)))
    for t in grid:
        row("21", None, t, reduce_single(front, Quantum(2, 1, t)))
    for t12 in grid:
        for t21 in grid:
            if t12 + t21 < 1:
                row("pair", t12, t21, reduce_double(front, QuantumPair(t12, t21)))
    return rows


def _fmt_theta(t) -> str:
    return "" if t is None else str(float(t))


def sweep_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["case", "theta12", "theta21", "n_before", "n_after", "excluded_pct"])
    for r in rows:
        w.writerow([r.case, _fmt_theta(r.theta12), _fmt_theta(r.theta21), r.n_before, r.n_after,
                    f"{r.excluded_pct:.4f}"])
    return buf.getvalue()
