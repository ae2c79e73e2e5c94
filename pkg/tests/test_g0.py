import itertools

import pytest

from fraisselab.catalogs import complete_graph, graph
from fraisselab.g0 import (
    POINT,
    SparseSet,
    StringGraph,
    as_structure,
    attach,
    canonical_sparse_dense,
    components,
    g0_edges_direct,
    g0_level,
    greedy_color,
    independence_check,
    is_acyclic,
    is_proper,
    level_summary,
    max_degree,
    shortlex,
    to_dot,
)
from fraisselab.structures import is_isomorphic
from fraisselab.catalogs import path_graph

S = canonical_sparse_dense(12)


def test_canonical_sparse_dense_examples():
    assert S.levels[0] == ""
    assert S.levels[1] == "0"
    assert S.levels[3] == "000"
    assert [len(s) for s in S.levels] == list(range(13))


def test_shortlex_enumerates_all_strings():
    strings = [shortlex(n) for n in range(15)]
    expected = [""] + ["".join(b) for k in (1, 2, 3) for b in itertools.product("01", repeat=k)]
    assert strings == expected


def test_density_witness():
    # every string t with |t| + index(t) small enough has an extension in S
    for n in range(13):
        t = shortlex(n)
        assert S.levels[n].startswith(t)
    assert S.dense_up_to() >= 2


def test_sparse_set_validation():
    with pytest.raises(ValueError):
        SparseSet(("", "01"))
    with pytest.raises(ValueError):
        canonical_sparse_dense(-1)


def test_attach_examples():
    H = attach(POINT, "")
    assert H.vertices == ("0", "1") and H.edges == {("0", "1")}
    for u in H.vertices:
        P = attach(H, u)
        assert len(P.vertices) == 4 and len(P.edges) == 3
        assert is_isomorphic(_as_graph(P), path_graph(4))
    with pytest.raises(ValueError):
        attach(H, "2")


def _as_graph(H: StringGraph):
    index = {v: k for k, v in enumerate(H.vertices)}
    return graph(len(index), [(index[u], index[v]) for u, v in H.edges])


def test_attach_doubles():
    H = POINT
    for n in range(6):
        H2 = attach(H, H.vertices[-1])
        assert len(H2.vertices) == 2 * len(H.vertices)
        assert len(H2.edges) == 2 * len(H.edges) + 1
        H = H2


def test_level_examples():
    L0 = g0_level(S, 0)
    assert L0.vertices == ("",) and not L0.edges
    L2 = g0_level(S, 2)
    assert len(L2.vertices) == 4 and len(L2.edges) == 3
    assert is_isomorphic(as_structure(L2), path_graph(4))
    with pytest.raises(ValueError):
        g0_level(canonical_sparse_dense(2), 5)


def test_direct_edges_examples():
    assert g0_edges_direct(S, 1) == {("0", "1")}
    assert g0_edges_direct(S, 2) == {("00", "10"), ("01", "11"), ("00", "01")}


def test_structure_for_all_levels():
    for n in range(13):
        L = g0_level(S, n)
        assert len(L.vertices) == 2**n and len(L.edges) == 2**n - 1
        assert components(L) == 1 and is_acyclic(L)
        assert L.edges == g0_edges_direct(S, n)


def test_greedy_color_examples():
    K3 = complete_graph(3)
    col = greedy_color(K3, [2, 0, 1])
    assert len(set(col.values())) == 3 and is_proper(K3, col)
    assert set(greedy_color(graph(4), range(4)).values()) == {0}
    L = g0_level(S, 8)
    col = greedy_color(L, L.vertices)
    assert is_proper(L, col)
    assert len(set(col.values())) <= max_degree(L) + 1
    with pytest.raises(ValueError):
        greedy_color(K3, [0, 1])


def test_independence_examples():
    L2 = g0_level(S, 2)
    assert independence_check(L2, {"00"})
    assert not independence_check(L2, {"00", "10"})
    assert independence_check(L2, {"00", "11"})
    assert not independence_check(complete_graph(3), {0, 2})
    with pytest.raises(ValueError):
        independence_check(L2, {"000"})


def test_acyclicity_detects_cycles():
    cycle = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
    assert not is_acyclic(cycle)
    assert is_acyclic({0: {1}, 1: {0}, 2: set()})
    assert components({0: {1}, 1: {0}, 2: set()}) == 2


def test_level_summary_and_dot():
    summary = level_summary(g0_level(S, 10))
    assert summary["vertices"] == 1024 and summary["edges"] == 1023
    assert summary["components"] == 1 and summary["acyclic"] and summary["matches_direct"]
    assert summary["single_flip"]
    text = to_dot(g0_level(S, 2))
    assert text.count(" -- ") == 3 and 'label="ε"' not in text
    assert 'label="ε"' in to_dot(g0_level(S, 0))
