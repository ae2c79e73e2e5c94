import itertools
from fractions import Fraction

import pytest

from fraisselab.catalogs import complete_graph, cycle_graph, edges_of, graph
from fraisselab.random_graph import (
    bit_graph,
    extension_property_level,
    extension_witness,
    pass_rate,
    sample_gnp,
    splitmix64,
    to_dot,
)


def test_splitmix64_reference_vectors():
    g = splitmix64(0)
    assert [next(g) for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    g = splitmix64(1234567)
    assert [next(g) for _ in range(2)] == [6457827717110365317, 3203168211198807973]


def test_sample_edge_rule_replayed():
    s = sample_gnp(8, Fraction(1, 3), 42)
    draws = splitmix64(42)
    expected = [(i, j) for i, j in itertools.combinations(range(8), 2) if next(draws) < 2**64 / 3]
    assert edges_of(s.graph) == expected


def test_sample_edge_cases():
    assert sample_gnp(0, Fraction(1, 2), 1).graph == graph(0)
    assert sample_gnp(6, 1, 9).graph == complete_graph(6)
    assert sample_gnp(6, 0, 9).graph == graph(6)
    with pytest.raises(ValueError):
        sample_gnp(3, Fraction(3, 2), 0)


def test_sample_is_reproducible():
    assert sample_gnp(30, "1/2", 7) == sample_gnp(30, Fraction(1, 2), 7)
    assert sample_gnp(30, "1/2", 7).graph != sample_gnp(30, "1/2", 8).graph


def test_extension_witness_examples():
    C5 = cycle_graph(5)
    assert extension_witness(C5, {0, 1}, set()) is None
    assert extension_witness(C5, {0}, {1}) == 4
    assert extension_witness(complete_graph(3), set(), set()) == 0
    with pytest.raises(ValueError):
        extension_witness(C5, {0}, {0})


def witness_naive(G, A, B):
    for v in range(G.size):
        if v in A or v in B:
            continue
        if all(G.holds("E", v, a) for a in A) and not any(G.holds("E", v, b) for b in B):
            return v
    return None


def test_level_examples():
    C5 = cycle_graph(5)
    assert extension_property_level(C5, 1, 1) == []
    fails = extension_property_level(C5, 2, 0)
    assert fails[0] == ((0, 1), ())
    assert extension_property_level(graph(1), 1, 0) == [((0,), ())]


def test_level_matches_naive_on_samples():
    for seed in range(5):
        G = sample_gnp(12, Fraction(1, 2), seed).graph
        got = extension_property_level(G, 2, 1)
        expected = [
            (A, B)
            for ka in range(3)
            for A in itertools.combinations(range(12), ka)
            for kb in range(2)
            for B in itertools.combinations([v for v in range(12) if v not in A], kb)
            if witness_naive(G, A, B) is None
        ]
        assert got == expected


def test_bit_graph_examples():
    assert edges_of(bit_graph(2)) == [(0, 1)]
    assert edges_of(bit_graph(3)) == [(0, 1), (1, 2)]


def test_bit_graph_sixteen_fails_level_one_one():
    G = bit_graph(16)
    fails = extension_property_level(G, 1, 1)
    assert fails
    for A, B in fails:
        assert witness_naive(G, A, B) is None
    # below 16 the only neighbour of 4 is 2 (no j < 16 has bit 4), and 2 ~ 1
    assert ((4,), (1,)) in fails


def test_pass_rate_report():
    rep = pass_rate(20, Fraction(1, 2), range(4))
    assert rep["samples"] == 4
    assert rep["passed"] + len(rep["failed_seeds"]) == 4


def test_dot_export():
    text = to_dot(cycle_graph(3))
    assert text.splitlines()[0] == "graph G {"
    assert "  0 -- 1;" in text and "  1 -- 2;" in text and "  0 -- 2;" in text
    assert to_dot(cycle_graph(3)) == text
