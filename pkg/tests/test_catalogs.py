import pytest

from fraisselab import catalogs
from fraisselab.catalogs import (
    GRAPHS,
    GRAPH_SIG,
    LINEAR_ORDERS,
    ORDER_SIG,
    TOURNAMENTS,
    AmalgamationFailure,
    amalgam,
    chain,
    complete_graph,
    distance_table,
    enumerate_members,
    get_class,
    graph,
    is_member,
    joint_embed,
    metric_space,
    path_graph,
    qmetric,
    tournament,
)
from fraisselab.structures import Structure, canonical_form, is_embedding, is_isomorphic

from _oracles import all_structures, iso_classes


def sizes(members):
    out = {}
    for S in members:
        out[S.size] = out.get(S.size, 0) + 1
    return out


def test_enumerate_graphs():
    # empty, K1, K2, 2K1 and the four graphs on three vertices
    members = enumerate_members(GRAPHS, 3)
    assert len(members) == 8
    assert sizes(members) == {0: 1, 1: 1, 2: 2, 3: 4}


def test_enumerate_orders_and_tournaments():
    assert sizes(enumerate_members(LINEAR_ORDERS, 4)) == {n: 1 for n in range(5)}
    assert sizes(enumerate_members(TOURNAMENTS, 3)) == {0: 1, 1: 1, 2: 1, 3: 2}


@pytest.mark.parametrize("spec,n", [(GRAPHS, 3), (TOURNAMENTS, 3), (LINEAR_ORDERS, 3), (GRAPHS, 4)])
def test_enumeration_matches_bruteforce(spec, n):
    if spec is GRAPHS and n == 4:
        # 2^16 raw structures is too many; brute-force over symmetric edge sets
        import itertools

        pairs = list(itertools.combinations(range(4), 2))
        raw = [graph(4, [p for p, b in zip(pairs, bits) if b]) for bits in itertools.product((0, 1), repeat=6)]
    else:
        raw = [S for S in all_structures(spec.signature, n) if is_member(spec, S) is None]
    expected = iso_classes(raw)
    got = [S for S in enumerate_members(spec, n) if S.size == n]
    assert len(got) == len(expected)
    for S in got:
        assert is_member(spec, S) is None
        assert sum(is_isomorphic(S, E) for E in expected) == 1


def test_enumeration_is_canonical_and_deduplicated():
    members = enumerate_members(GRAPHS, 5)
    forms = [canonical_form(S) for S in members]
    assert len(set(forms)) == len(forms)
    assert sizes(members) == {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34}


def test_membership_violations():
    loop = Structure.build(GRAPH_SIG, 1, {"E": [(0, 0)]})
    assert is_member(GRAPHS, loop).axiom == "irreflexivity"
    assert is_member(GRAPHS, Structure.build(GRAPH_SIG, 2, {"E": [(0, 1)]})).axiom == "symmetry"
    assert is_member(TOURNAMENTS, Structure.build(GRAPH_SIG, 2)).axiom == "totality"
    assert is_member(TOURNAMENTS, complete_graph(2)).axiom == "antisymmetry"
    bad_order = Structure.build(ORDER_SIG, 3, {"<": [(0, 1), (1, 2), (2, 0)]})
    assert is_member(LINEAR_ORDERS, bad_order).axiom == "transitivity"
    assert is_member(LINEAR_ORDERS, chain(4)) is None


def test_qmetric_membership():
    D = qmetric([1, 2])
    ok = metric_space([1, 2], 3, {(0, 1): 1, (1, 2): 1, (0, 2): 2})
    assert is_member(D, ok) is None
    bad = metric_space([1, 3], 3, {(0, 1): 1, (1, 2): 1, (0, 2): 3})
    assert is_member(qmetric([1, 3]), bad).axiom == "triangle"
    partial = metric_space([1, 2], 3, {(0, 1): 1, (1, 2): 1})
    assert is_member(D, partial).axiom == "totality"


def test_graph_amalgam_is_free():
    K1, K2 = graph(1), complete_graph(2)
    D, i, j = amalgam(GRAPHS, K1, K2, K2, (0,), (0,))
    assert is_isomorphic(D, path_graph(3))
    assert i[0] == j[0]
    assert not D.holds("E", i[1], j[1])


def test_order_amalgam_over_empty():
    one = chain(1)
    D, i, j = amalgam(LINEAR_ORDERS, chain(0), one, one, (), ())
    assert D == chain(2)
    assert i[0] < j[0]


def test_order_amalgam_interleaves_gaps():
    # B = 0 < 1 < 2 over A = {0, 2}; C = 0 < 1 < 2 over A = {0, 2} as well:
    # both new points sit in the same gap; B's goes first
    A = chain(2)
    D, i, j = amalgam(LINEAR_ORDERS, A, chain(3), chain(3), (0, 2), (0, 2))
    assert is_member(LINEAR_ORDERS, D) is None
    assert D.size == 4
    assert D.holds("<", i[1], j[1])
    # C's new point lies above A, B's lies between the points of A
    D, i, j = amalgam(LINEAR_ORDERS, A, chain(3), chain(3), (0, 2), (0, 1))
    assert D.holds("<", i[1], i[2]) and D.holds("<", i[2], j[2])


def test_tournament_amalgam_is_member():
    T3 = tournament(3, [(0, 1), (1, 2), (2, 0)])
    D, i, j = amalgam(TOURNAMENTS, tournament(1, []), T3, T3, (0,), (1,))
    assert is_member(TOURNAMENTS, D) is None
    assert is_embedding(T3, D, i) and is_embedding(T3, D, j)


def test_qmetric_amalgam_failure_certificate():
    D = qmetric([1, 2, 3])
    point = metric_space([1, 2, 3], 1, {})
    B = metric_space([1, 2, 3], 2, {(0, 1): 1})
    C = metric_space([1, 2, 3], 2, {(0, 1): 3})
    with pytest.raises(AmalgamationFailure) as info:
        amalgam(D, point, B, C, (0,), (0,))
    assert info.value.certificate


def test_qmetric_amalgam_success():
    D = qmetric([1, 2])
    point = metric_space([1, 2], 1, {})
    B = metric_space([1, 2], 2, {(0, 1): 1})
    Dm, i, j = amalgam(D, point, B, B, (0,), (0,))
    assert is_member(D, Dm) is None
    assert distance_table(Dm)[(i[1], j[1])] == 2


def test_amalgam_rejects_non_embeddings():
    with pytest.raises(ValueError):
        amalgam(GRAPHS, complete_graph(2), complete_graph(2), graph(2), (0, 1), (0, 1))


def test_joint_embed():
    C, i, j = joint_embed(GRAPHS, complete_graph(2), graph(1))
    assert C.size == 3 and len(catalogs.edges_of(C)) == 1
    C, i, j = joint_embed(LINEAR_ORDERS, chain(2), chain(1))
    assert C == chain(3)
    assert max(i) < min(j)
    one = metric_space([1], 1, {})
    C, i, j = joint_embed(qmetric([1]), one, one)
    assert C == metric_space([1], 2, {(0, 1): 1})


def test_get_class():
    assert get_class("graphs") is GRAPHS
    assert get_class("qmetric", [1, 2]).signature.names == ("d=1", "d=2")
    with pytest.raises(ValueError):
        get_class("posets")
    with pytest.raises(ValueError):
        get_class("qmetric")
