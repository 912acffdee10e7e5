import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biatsp.dominance import (
    Front,
    cardinality_bound,
    crowding_distances,
    dominates,
    nondominated_sort,
    pareto_filter,
)
from biatsp.exact import enumerate_pareto
from biatsp.instance import Instance, Tour, generate_contradicting, generate_random

vec = st.tuples(st.integers(0, 30), st.integers(0, 30))


def test_dominates_examples():
    assert dominates((1, 2), (2, 2))
    assert not dominates((1, 2), (1, 2))
    assert not dominates((1, 3), (2, 2))


@given(vec, vec, vec)
def test_dominates_is_a_strict_order(a, b, c):
    assert not dominates(a, a)
    assert not (dominates(a, b) and dominates(b, a))
    if dominates(a, b) and dominates(b, c):
        assert dominates(a, c)


def brute_filter(points):
    vecs = {tuple(v) for v in points}
    return {v for v in vecs if not any(dominates(u, v) for u in vecs)}


def test_pareto_filter_example():
    pts = [(1, 3), (2, 2), (3, 1), (2, 3)]
    assert pareto_filter((p, None) for p in pts).vector_set() == {(1, 3), (2, 2), (3, 1)}


def test_pareto_filter_keeps_line_points():
    pts = [(y, 36 - y) for y in range(12, 25)]
    assert pareto_filter((p, None) for p in pts).vector_set() == set(pts)


def test_pareto_filter_random_against_quadratic_oracle():
    rng = np.random.default_rng(0)
    pts = [tuple(x) for x in rng.integers(0, 60, size=(200, 2)).tolist()]
    assert pareto_filter((p, i) for i, p in enumerate(pts)).vector_set() == brute_filter(pts)


def test_pareto_filter_collapses_duplicates_keeping_first_payload():
    front = pareto_filter([((1, 2), "a"), ((1, 2), "b"), ((2, 1), "c")])
    assert sorted(front.entries) == [((1, 2), "a"), ((2, 1), "c")]


def test_pareto_filter_empty():
    assert len(pareto_filter([])) == 0


@given(st.lists(vec, max_size=60), st.randoms())
def test_pareto_filter_idempotent_and_order_free(pts, rnd):
    f = pareto_filter((p, None) for p in pts)
    assert f.vector_set() == brute_filter(pts)
    assert pareto_filter(f.entries).vector_set() == f.vector_set()
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert pareto_filter((p, None) for p in shuffled).vector_set() == f.vector_set()


def peel_ranks(vectors):
    remaining = dict(enumerate(vectors))
    ranks = {}
    r = 1
    while remaining:
        level = brute_filter(remaining.values())
        for i, v in list(remaining.items()):
            if v in level:
                ranks[i] = r
                del remaining[i]
        r += 1
    return [ranks[i] for i in range(len(vectors))]


def test_sort_all_nondominated_rank_one():
    pop = [(None, (i, 10 - i)) for i in range(11)]
    assert {m.rank for m in nondominated_sort(pop)} == {1}


def test_sort_chain():
    pop = [(None, (3, 3)), (None, (1, 1)), (None, (2, 2))]
    assert [m.rank for m in nondominated_sort(pop)] == [3, 1, 2]


def test_sort_random_against_peeling_oracle():
    rng = np.random.default_rng(1)
    vectors = [tuple(x) for x in rng.integers(0, 25, size=(100, 2)).tolist()]
    ranked = nondominated_sort([(None, v) for v in vectors])
    assert [m.rank for m in ranked] == peel_ranks(vectors)


@given(st.lists(vec, min_size=1, max_size=40))
@settings(max_examples=60)
def test_rank_one_is_pareto_filter(vectors):
    ranked = nondominated_sort([(None, v) for v in vectors])
    rank1 = {m.vector for m in ranked if m.rank == 1}
    assert rank1 == brute_filter(vectors)
    assert [m.rank for m in ranked] == peel_ranks(vectors)


def test_sort_keeps_duplicates():
    ranked = nondominated_sort([(None, (1, 1)), (None, (1, 1)), (None, (2, 2))])
    assert [m.rank for m in ranked] == [1, 1, 2]


def test_crowding_three_points():
    assert crowding_distances([(1, 3), (2, 2), (3, 1)]) == [math.inf, 2.0, math.inf]


def test_crowding_two_points():
    assert crowding_distances([(1, 3), (3, 1)]) == [math.inf, math.inf]


def test_crowding_zero_range_contributes_nothing():
    d = crowding_distances([(1, 5), (2, 5), (3, 5), (4, 5)])
    assert math.isinf(d[0]) and math.isinf(d[3])
    assert d[1] == pytest.approx(2 / 3) and d[2] == pytest.approx(2 / 3)


def crowding_by_definition(points):
    n = len(points)
    out = [0.0] * n
    for m in range(2):
        vals = [p[m] for p in points]
        lo, hi = min(vals), max(vals)
        ranked = sorted(range(n), key=lambda i: (vals[i], i))
        for pos, i in enumerate(ranked):
            if pos in (0, n - 1):
                out[i] = math.inf
            elif hi > lo and out[i] != math.inf:
                out[i] += (vals[ranked[pos + 1]] - vals[ranked[pos - 1]]) / (hi - lo)
    return out


def test_crowding_random_against_definition():
    rng = np.random.default_rng(2)
    xs = np.sort(rng.choice(1000, 50, replace=False))
    ys = np.sort(rng.choice(1000, 50, replace=False))[::-1]
    pts = list(zip(xs.tolist(), ys.tolist()))
    got = crowding_distances(pts)
    want = crowding_by_definition(pts)
    assert got == pytest.approx(want)


@given(st.lists(st.integers(0, 1000), min_size=3, max_size=30, unique=True),
       st.floats(0.1, 10), st.floats(-50, 50), st.randoms())
@settings(max_examples=60)
def test_crowding_affine_and_permutation_invariance(xs, scale, shift, rnd):
    xs = sorted(xs)
    pts = [(x, 2000 - x) for x in xs]
    base = crowding_distances(pts)
    scaled = crowding_distances([(x * scale + shift, y) for x, y in pts])
    assert scaled == pytest.approx(base)
    perm = list(range(len(pts)))
    rnd.shuffle(perm)
    permuted = crowding_distances([pts[i] for i in perm])
    assert permuted == pytest.approx([base[i] for i in perm])


def test_cardinality_bound_uniform_weights():
    n = 6
    inst = Instance(n, np.full((n, n), 3), np.full((n, n), 7))
    assert cardinality_bound(inst) == 1


def test_cardinality_bound_contradicting():
    inst = generate_contradicting(12, seed=1)
    assert cardinality_bound(inst) >= 13


@pytest.mark.parametrize("seed", range(4))
def test_cardinality_bound_covers_exact_front(seed):
    inst = generate_random(8, 1, 10, 1, 10, seed=seed)
    assert len(enumerate_pareto(inst)) <= cardinality_bound(inst)


def test_front_csv_roundtrip():
    front = Front([((12, 24), Tour.from_order([0, 3, 1, 2])), ((13, 23), None)])
    text = front.to_csv()
    assert text.splitlines()[0] == "d1,d2,tour"
    assert "0-3-1-2" in text
    back = Front.from_csv(text)
    assert back.vector_set() == front.vector_set()
    assert dict(back.entries)[(12, 24)] == Tour.from_order([0, 3, 1, 2])


def test_front_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        Front.from_csv("a,b,c\n1,2,\n")
