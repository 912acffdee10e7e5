import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biatsp.instance import (
    Instance,
    InvalidTourError,
    TSPLIBParseError,
    Tour,
    evaluate,
    format_tsplib,
    generate_contradicting,
    generate_ftv_derived,
    generate_random,
    parse_tsplib,
)


def uniform_instance(n, c1, c2):
    return Instance(n, np.full((n, n), c1), np.full((n, n), c2), name="uniform")


def random_order(n, seed):
    rng = np.random.default_rng(seed)
    return [0] + (rng.permutation(n - 1) + 1).tolist()


def test_evaluate_uniform_n3():
    inst = uniform_instance(3, 1, 2)
    assert evaluate(inst, Tour.from_order([0, 1, 2])) == (3, 6)
    assert evaluate(inst, Tour.from_order([0, 2, 1])) == (3, 6)


@given(n=st.integers(3, 15), seed=st.integers(0, 2**32 - 1), tseed=st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_contradicting_tours_sum_to_3n(n, seed, tseed):
    inst = generate_contradicting(n, seed)
    d1, d2 = evaluate(inst, Tour.from_order(random_order(n, tseed)))
    assert d1 + d2 == 3 * n


def test_evaluate_matches_arc_by_arc_sum():
    inst = generate_random(8, 1, 10, 1, 20, seed=11)
    order = [0, 5, 3, 7, 1, 6, 2, 4]
    expected1 = expected2 = 0
    for a, b in zip(order, order[1:] + order[:1]):
        expected1 += int(inst.w1[a][b])
        expected2 += int(inst.w2[a][b])
    assert evaluate(inst, Tour.from_order(order)) == (expected1, expected2)


def test_evaluate_is_additive_in_weights():
    inst = generate_random(9, 1, 10, 1, 10, seed=2)
    doubled = Instance(9, 2 * np.array(inst.w1), inst.w2)
    t = Tour.from_order(random_order(9, 3))
    assert evaluate(doubled, t)[0] == 2 * evaluate(inst, t)[0]
    assert evaluate(doubled, t)[1] == evaluate(inst, t)[1]


@pytest.mark.parametrize("succ", [(1, 0, 3, 2), (0, 1, 2, 3), (1, 2, 0, 3), (1, 1, 0, 2)])
def test_invalid_tours_rejected(succ):
    with pytest.raises(InvalidTourError):
        Tour(succ)


def test_tour_length_must_match_instance():
    inst = uniform_instance(4, 1, 1)
    with pytest.raises(InvalidTourError):
        evaluate(inst, Tour.from_order([0, 1, 2]))


def test_tour_order_roundtrip():
    t = Tour.from_order([0, 4, 2, 1, 3])
    assert t.order() == [0, 4, 2, 1, 3]
    assert Tour.from_order(t.order(2)) == t
    assert str(t) == "0-4-2-1-3"


def assert_instance_invariants(inst):
    off = ~np.eye(inst.n, dtype=bool)
    for w in (inst.w1, inst.w2):
        if w is None:
            continue
        assert (w[off] >= 1).all()
        assert (np.diag(w) == inst.sentinel).all()
        assert inst.sentinel > inst.n * w[off].max()


def test_generate_random_ranges_and_determinism():
    a = generate_random(12, 1, 10, 1, 20, seed=5)
    b = generate_random(12, 1, 10, 1, 20, seed=5)
    off = ~np.eye(12, dtype=bool)
    assert np.array_equal(a.w1, b.w1) and np.array_equal(a.w2, b.w2)
    assert a.w1[off].min() >= 1 and a.w1[off].max() <= 10
    assert a.w2[off].min() >= 1 and a.w2[off].max() <= 20
    assert a.name == "S12[1,10][1,20]"
    assert_instance_invariants(a)
    c = generate_random(12, 1, 10, 1, 20, seed=6)
    assert not np.array_equal(a.w1, c.w1)


def test_generate_random_degenerate_range():
    inst = generate_random(6, 5, 5, 1, 3, seed=0)
    assert (inst.w1[~np.eye(6, dtype=bool)] == 5).all()


@pytest.mark.parametrize("args", [(2, 1, 2, 1, 2), (5, 0, 2, 1, 2), (5, 3, 2, 1, 2), (5, 1, 2, 4, 1)])
def test_generate_random_rejects_bad_arguments(args):
    with pytest.raises(ValueError):
        generate_random(*args, seed=0)


def test_generate_contradicting():
    inst = generate_contradicting(12, seed=3)
    off = ~np.eye(12, dtype=bool)
    assert ((inst.w1 + inst.w2)[off] == 3).all()
    assert set(np.unique(inst.w1[off])) == {1, 2}
    assert_instance_invariants(inst)


def test_generate_ftv_derived():
    base = parse_tsplib(format_tsplib(generate_random(7, 1, 30, 1, 1, seed=1)))
    top = base.w1[~np.eye(7, dtype=bool)].max()
    a = generate_ftv_derived(base, seed=4)
    b = generate_ftv_derived(base, seed=4)
    off = ~np.eye(7, dtype=bool)
    assert np.array_equal(a.w1, base.w1)
    assert np.array_equal(a.w2, b.w2)
    assert a.w2[off].min() >= 1 and a.w2[off].max() <= top
    assert_instance_invariants(a)


def test_generate_ftv_derived_degenerate_interval():
    base = Instance(5, np.ones((5, 5), dtype=int), None, name="ones")
    inst = generate_ftv_derived(base, seed=0)
    assert (inst.w2[~np.eye(5, dtype=bool)] == 1).all()


MINIMAL = b"""NAME: tiny
TYPE: ATSP
COMMENT: three nodes
DIMENSION: 3
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
 9999 1 2
 3 9999 4
 5 6 9999
EOF
"""


def test_parse_minimal_full_matrix():
    inst = parse_tsplib(MINIMAL)
    assert inst.n == 3 and inst.name == "tiny" and inst.w2 is None
    assert inst.w1[0, 1] == 1 and inst.w1[0, 2] == 2
    assert inst.w1[1, 0] == 3 and inst.w1[1, 2] == 4
    assert inst.w1[2, 0] == 5 and inst.w1[2, 1] == 6


def test_parse_ftv33_sized_file():
    # 34-vertex matrix wrapped over irregular line lengths, as TSPLIB files are
    rng = np.random.default_rng(33)
    w = rng.integers(1, 300, size=(34, 34))
    flat = [str(x) for x in w.ravel().tolist()]
    body = "\n".join(" ".join(flat[i:i + 10]) for i in range(0, len(flat), 10))
    text = ("NAME: ftv33\nTYPE: ATSP\nCOMMENT: synthetic stand-in\nDIMENSION: 34\n"
            "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\n"
            f"EDGE_WEIGHT_SECTION\n{body}\nEOF\n")
    section = text.split("EDGE_WEIGHT_SECTION")[1].replace("EOF", "")
    assert len(section.split()) == 34 * 34
    inst = parse_tsplib(text)
    assert inst.n == 34
    off = ~np.eye(34, dtype=bool)
    assert np.array_equal(inst.w1[off], w[off])


def test_parse_rejects_symmetric_type():
    with pytest.raises(TSPLIBParseError, match="TYPE"):
        parse_tsplib(MINIMAL.replace(b"TYPE: ATSP", b"TYPE: TSP"))


def test_parse_rejects_missing_key():
    with pytest.raises(TSPLIBParseError, match="DIMENSION"):
        parse_tsplib(MINIMAL.replace(b"DIMENSION: 3\n", b""))


def test_parse_rejects_wrong_entry_count():
    with pytest.raises(TSPLIBParseError, match="line"):
        parse_tsplib(MINIMAL.replace(b" 5 6 9999\n", b" 5 6\n"))


def test_json_roundtrip():
    inst = generate_random(6, 1, 10, 1, 20, seed=9)
    back = Instance.from_json(inst.to_json())
    assert back.n == 6 and back.name == inst.name
    assert np.array_equal(back.w1, inst.w1) and np.array_equal(back.w2, inst.w2)
    assert back.to_json() == inst.to_json()
