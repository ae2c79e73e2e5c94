import itertools

import pytest

from fraisselab.catalogs import (
    GRAPHS,
    GRAPH_SIG,
    LINEAR_ORDERS,
    TOURNAMENTS,
    ClassSpec,
    Violation,
    chain,
    complete_graph,
    cycle_graph,
    distance_table,
    edges_of,
    graph,
    path_graph,
    qmetric,
)
from fraisselab.fraisse import (
    Obstruction,
    back_and_forth,
    check_amalgamation,
    check_hereditary,
    check_jep,
    extension_property_check,
    fraisse_chain,
    iter_partial_isomorphisms,
)
from fraisselab.random_graph import bit_graph
from fraisselab.structures import find_isomorphism, is_partial_isomorphism

from _oracles import is_embedding_naive


def _even_edges(S):
    if len(edges_of(S)) % 2:
        return Violation("even edge count", {"edges": edges_of(S)})
    return GRAPHS.membership(S)


def _all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield graph(n, [p for p, b in zip(pairs, bits) if b])


EVEN = ClassSpec("even-graphs", GRAPH_SIG, _even_edges, candidates=_all_graphs)


def test_hereditary_builtins():
    assert check_hereditary(GRAPHS, 4).holds
    assert check_hereditary(TOURNAMENTS, 4).holds


def test_hereditary_counterexample():
    v = check_hereditary(EVEN, 3)
    assert not v.holds
    member, subset = v.counterexample["member"], v.counterexample["subset"]
    assert len(edges_of(member)) % 2 == 0
    sub_edges = [e for e in edges_of(member) if set(e) <= set(subset)]
    assert len(sub_edges) % 2 == 1


def test_jep_builtins():
    assert check_jep(GRAPHS, 4).holds
    assert check_jep(LINEAR_ORDERS, 4).holds


def test_jep_qmetric_two_five_holds():
    # joining at the largest distance never creates a short-short-long triangle
    v = check_jep(qmetric([2, 5]), 3)
    assert v.holds


def test_amalgamation_graphs_uses_strategy():
    rep = check_amalgamation(GRAPHS, 3, 7)
    assert rep.holds and rep.strategy_failures == 0
    assert all(c.via == "strategy" and c.verify() for c in rep.certificates)


def test_amalgamation_tournaments():
    rep = check_amalgamation(TOURNAMENTS, 3, 5)
    assert rep.holds
    assert all(c.verify() for c in rep.certificates)


def test_amalgamation_qmetric_one_three_holds():
    # d = 1 is an equivalence relation in such spaces; those amalgamate
    rep = check_amalgamation(qmetric([1, 3]), 3, 5)
    assert rep.holds
    assert all(c.verify() for c in rep.certificates)


def test_amalgamation_qmetric_failure():
    rep = check_amalgamation(qmetric([1, 2, 4]), 3, 5)
    assert not rep.holds
    A, B, C, alpha, beta = rep.counterexample
    # the two new points are pinned to distances forcing a value outside {1, 2, 4}
    dB, dC = distance_table(B), distance_table(C)
    b = next(x for x in range(B.size) if x not in alpha)
    c = next(x for x in range(C.size) if x not in beta)
    lo = max(abs(dB[(b, alpha[a])] - dC[(c, beta[a])]) for a in range(A.size))
    hi = min(dB[(b, alpha[a])] + dC[(c, beta[a])] for a in range(A.size))
    assert not any(lo <= q <= hi for q in (1, 2, 4))


def test_amalgamation_bound_validation():
    with pytest.raises(ValueError):
        check_amalgamation(GRAPHS, 4, 3)


def test_extension_property_examples():
    assert extension_property_check(chain(6), LINEAR_ORDERS, 0, 1).holds
    v = extension_property_check(chain(3), LINEAR_ORDERS, 2, 3)
    assert not v.holds
    # the reported extension really is unrealizable: brute-force all maps
    A, B, alpha = v.counterexample["A"], v.counterexample["B"], v.counterexample["alpha"]
    M = chain(3)
    for phi in itertools.permutations(range(M.size), B.size):
        if is_embedding_naive(B, M, phi):
            assert any(phi[alpha[x]] != A[x] for x in range(len(A)))
    assert extension_property_check(bit_graph(16), GRAPHS, 1, 2).holds


def _replay(state, spec):
    for e in state.ledger:
        if e.realized:
            assert is_embedding_naive(e.B, state.current, e.witness)
            assert all(e.witness[e.alpha[x]] == e.f[x] for x in range(e.A.size))
            assert is_embedding_naive(e.A, e.B, e.alpha)
    assert all(e.realized for e in state.ledger[:-1]) or state.ledger == []
    assert spec.membership(state.current) is None


def test_chain_linear_orders():
    s1 = fraisse_chain(LINEAR_ORDERS, 1)
    assert s1.current == chain(1)
    _replay(s1, LINEAR_ORDERS)
    s8 = fraisse_chain(LINEAR_ORDERS, 8)
    assert s8.current.size == 8 and s8.verify()
    _replay(s8, LINEAR_ORDERS)
    assert max(e.B.size for e in s8.ledger) <= 1 + s8.rounds


def test_chain_graphs_realizes_extensions_of_point():
    s = fraisse_chain(GRAPHS, 6)
    assert s.current.size == 6 and s.verify()
    _replay(s, GRAPHS)
    realized = {(e.A.size, e.B, e.alpha, e.f) for e in s.ledger if e.realized}
    # every one-point extension of the first vertex was realized over it
    for B in (complete_graph(2), graph(2)):
        assert (1, B, (0,), (0,)) in realized


def test_chain_is_deterministic():
    a, b = fraisse_chain(TOURNAMENTS, 5), fraisse_chain(TOURNAMENTS, 5)
    assert a.current == b.current and a.ledger == b.ledger


def test_back_and_forth_examples():
    C5 = cycle_graph(5)
    iso = back_and_forth(C5, C5)
    assert isinstance(iso, tuple) and is_embedding_naive(C5, C5, iso)
    out = back_and_forth(cycle_graph(4), path_graph(4))
    assert isinstance(out, Obstruction)
    assert back_and_forth(chain(5), chain(5), [(0, 0)]) == (0, 1, 2, 3, 4)


def test_back_and_forth_greedy_may_stop_early():
    # with backtracking disabled the first choice is final
    out = back_and_forth(cycle_graph(4), path_graph(4), backtrack=False)
    assert isinstance(out, Obstruction)


def test_back_and_forth_seed_validation():
    with pytest.raises(ValueError):
        back_and_forth(path_graph(3), path_graph(3), [(0, 1), (2, 1)])


def test_back_and_forth_respects_seed():
    P = path_graph(3)
    assert back_and_forth(P, P, [(0, 2)]) == (2, 1, 0)
    assert isinstance(back_and_forth(P, P, [(1, 0)]), Obstruction)


def test_iter_partial_isomorphisms():
    P = path_graph(3)
    parts = list(iter_partial_isomorphisms(P, P))
    assert all(is_partial_isomorphism(P, P, p) for p in parts)
    assert len(parts) == len(set(parts))
    assert find_isomorphism(P, P) is not None
