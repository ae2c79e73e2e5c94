"""Built-in classes of finite structures with their amalgamation strategies.

Members are enumerated up to isomorphism as canonical forms.  For hereditary
classes the enumerator grows size ``s + 1`` from the one-point extensions of
the size ``s`` members; non-hereditary test fixtures supply a brute-force
candidate generator instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .structures import (
    Embedding,
    Signature,
    SignatureMismatch,
    Structure,
    canonical_form,
    encoding,
    is_embedding,
)

GRAPH_SIG = Signature.of(("E", 2))
ORDER_SIG = Signature.of(("<", 2))


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.axiom}: {self.witness}" if self.witness else self.axiom


class AmalgamationFailure(Exception):
    """A strategy could not produce an amalgam; ``certificate`` says why."""

    def __init__(self, reason: str, certificate: Optional[dict] = None):
        super().__init__(reason)
        self.reason = reason
        self.certificate = certificate or {}


Amalgam = tuple[Structure, Embedding, Embedding]


@dataclass(frozen=True, eq=False)
class ClassSpec:
    name: str
    signature: Signature
    membership: Callable[[Structure], Optional[Violation]]
    extend: Optional[Callable[[Structure], Iterable[Structure]]] = None
    candidates: Optional[Callable[[int], Iterable[Structure]]] = None
    amalgam_strategy: Optional[
        Callable[[Structure, Structure, Structure, Embedding, Embedding], Amalgam]
    ] = None
    jep_strategy: Optional[Callable[[Structure, Structure], Amalgam]] = None
    _members: dict = field(default_factory=dict, repr=False)

    def __hash__(self):
        return hash((self.name, self.signature))


# -- constructors -----------------------------------------------------------


def graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Structure:
    sym = set()
    for u, v in edges:
        sym.add((u, v))
        sym.add((v, u))
    return Structure.build(GRAPH_SIG, n, {"E": sym})


def complete_graph(n: int) -> Structure:
    return graph(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> Structure:
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Structure:
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def chain(n: int) -> Structure:
    return Structure.build(ORDER_SIG, n, {"<": itertools.combinations(range(n), 2)})


def tournament(n: int, arcs: Iterable[tuple[int, int]]) -> Structure:
    return Structure.build(GRAPH_SIG, n, {"E": arcs})


def edges_of(G: Structure) -> list[tuple[int, int]]:
    return sorted((u, v) for u, v in G.relation("E") if u < v)


# -- membership -------------------------------------------------------------


def _check_signature(spec_sig: Signature, A: Structure) -> None:
    if A.signature != spec_sig:
        raise SignatureMismatch(
            f"expected signature {spec_sig.relations}, got {A.signature.relations}"
        )


def _graph_violation(A: Structure) -> Optional[Violation]:
    E = A.relation("E")
    for u, v in sorted(E):
        if u == v:
            return Violation("irreflexivity", (u, v))
    for u, v in sorted(E):
        if (v, u) not in E:
            return Violation("symmetry", (u, v))
    return None


def _tournament_violation(A: Structure) -> Optional[Violation]:
    E = A.relation("E")
    for u, v in sorted(E):
        if u == v:
            return Violation("irreflexivity", (u, v))
    for u, v in itertools.combinations(range(A.size), 2):
        there, back = (u, v) in E, (v, u) in E
        if there and back:
            return Violation("antisymmetry", (u, v))
        if not there and not back:
            return Violation("totality", (u, v))
    return None


def _order_violation(A: Structure) -> Optional[Violation]:
    lt = A.relation("<")
    for u, v in sorted(lt):
        if u == v:
            return Violation("irreflexivity", (u, v))
    for u, v in itertools.combinations(range(A.size), 2):
        there, back = (u, v) in lt, (v, u) in lt
        if there and back:
            return Violation("antisymmetry", (u, v))
        if not there and not back:
            return Violation("totality", (u, v))
    for u, v in sorted(lt):
        for w in range(A.size):
            if (v, w) in lt and (u, w) not in lt:
                return Violation("transitivity", (u, v, w))
    return None


def is_member(spec: ClassSpec, A: Structure) -> Optional[Violation]:
    """``None`` when A belongs to the class, else the first violated axiom."""
    _check_signature(spec.signature, A)
    return spec.membership(A)


# -- enumeration ------------------------------------------------------------


def _dedup_sorted(structs: Iterable[Structure]) -> list[Structure]:
    seen: dict[int, Structure] = {}
    for S in structs:
        C = canonical_form(S)
        seen.setdefault(encoding(C), C)
    return [seen[k] for k in sorted(seen)]


def enumerate_members(spec: ClassSpec, max_size: int) -> list[Structure]:
    """All members of size <= max_size up to isomorphism, sorted by
    (size, encoding of the canonical form)."""
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    levels = spec._members
    for n in range(max_size + 1):
        if n in levels:
            continue
        if spec.candidates is not None:
            pool: Iterable[Structure] = spec.candidates(n)
        elif n == 0:
            pool = [Structure.build(spec.signature, 0)]
        else:
            assert spec.extend is not None, f"{spec.name} has no enumerator"
            pool = (X for S in levels[n - 1] for X in spec.extend(S))
        levels[n] = _dedup_sorted(S for S in pool if spec.membership(S) is None)
    return [S for n in range(max_size + 1) for S in levels[n]]


def members_of_size(spec: ClassSpec, n: int) -> list[Structure]:
    enumerate_members(spec, n)
    return list(spec._members[n])


# -- amalgamation -----------------------------------------------------------


def glue(
    B: Structure, C: Structure, alpha: Sequence[int], beta: Sequence[int]
) -> tuple[int, Embedding, Embedding, list[int], list[int]]:
    """Lay out B ⊔ C over the common copy of A.

    B keeps its labels; the points of C outside beta(A) follow in increasing
    order.  Returns (size, i, j, B-only points, C-only points) in D's labels.
    """
    over = {c: alpha[a] for a, c in enumerate(beta)}
    j = []
    fresh = []
    nxt = B.size
    for c in range(C.size):
        if c in over:
            j.append(over[c])
        else:
            j.append(nxt)
            fresh.append(nxt)
            nxt += 1
    b_only = [b for b in range(B.size) if b not in set(alpha)]
    return nxt, tuple(range(B.size)), tuple(j), b_only, fresh


def _union_tables(B: Structure, C: Structure, j: Sequence[int]) -> list[set]:
    return [
        set(tb) | {tuple(j[x] for x in t) for t in tc}
        for tb, tc in zip(B.tables, C.tables)
    ]


def _free_amalgam(spec_sig: Signature, cross: Optional[str]):
    """Graphs: no cross edges.  Tournaments: every B-only point points at
    every C-only point."""

    def strategy(A, B, C, alpha, beta):
        size, i, j, b_only, c_only = glue(B, C, alpha, beta)
        tables = _union_tables(B, C, j)
        if cross is not None:
            r = spec_sig.names.index(cross)
            tables[r] |= {(b, c) for b in b_only for c in c_only}
        D = Structure(spec_sig, size, tuple(frozenset(t) for t in tables))
        return D, i, j

    return strategy


def _order_amalgam(A, B, C, alpha, beta):
    """B-only points go below C-only points lying in the same gap of A.

    Across different gaps the order of A decides; putting all of B∖A below
    all of C∖A is only transitive when A is empty or convex.
    """
    size, i, j, b_only, c_only = glue(B, C, alpha, beta)
    lt_b, lt_c = B.relation("<"), C.relation("<")
    jinv = {v: k for k, v in enumerate(j)}
    gap_b = {b: sum((alpha[a], b) in lt_b for a in range(A.size)) for b in b_only}
    gap_c = {c: sum((beta[a], jinv[c]) in lt_c for a in range(A.size)) for c in c_only}
    tables = _union_tables(B, C, j)
    for b in b_only:
        for c in c_only:
            tables[0].add((b, c) if gap_b[b] <= gap_c[c] else (c, b))
    return Structure(ORDER_SIG, size, (frozenset(tables[0]),)), i, j


def _joint_via_amalgam(spec_sig: Signature, strategy):
    empty = Structure.build(spec_sig, 0)

    def jep(A, B):
        return strategy(empty, A, B, (), ())

    return jep


def amalgam(
    spec: ClassSpec,
    A: Structure,
    B: Structure,
    C: Structure,
    alpha: Sequence[int],
    beta: Sequence[int],
) -> Amalgam:
    """Amalgamate B and C over A along alpha: A->B and beta: A->C.

    Returns (D, i, j) with i: B->D, j: C->D and i∘alpha = j∘beta.  Raises
    AmalgamationFailure when the class strategy cannot produce a member.
    """
    for X in (A, B, C):
        _check_signature(spec.signature, X)
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != A.size or not is_embedding(A, B, alpha):
        raise ValueError(f"alpha={alpha} is not an embedding A->B")
    if len(beta) != A.size or not is_embedding(A, C, beta):
        raise ValueError(f"beta={beta} is not an embedding A->C")
    if spec.amalgam_strategy is None:
        raise AmalgamationFailure(f"class {spec.name} has no amalgam strategy")
    D, i, j = spec.amalgam_strategy(A, B, C, alpha, beta)
    _certify(spec, D, [(B, i), (C, j)])
    if tuple(i[x] for x in alpha) != tuple(j[x] for x in beta):
        raise AmalgamationFailure("square does not commute", {"i": i, "j": j})
    return D, tuple(i), tuple(j)


def joint_embed(spec: ClassSpec, A: Structure, B: Structure) -> Amalgam:
    for X in (A, B):
        _check_signature(spec.signature, X)
    if spec.jep_strategy is None:
        raise AmalgamationFailure(f"class {spec.name} has no joint-embedding strategy")
    C, i, j = spec.jep_strategy(A, B)
    _certify(spec, C, [(A, i), (B, j)])
    return C, tuple(i), tuple(j)


def _certify(spec: ClassSpec, D: Structure, maps) -> None:
    bad = spec.membership(D)
    if bad is not None:
        raise AmalgamationFailure(
            f"strategy output violates {bad.axiom}", {"violation": str(bad), "D": D}
        )
    for X, f in maps:
        if not is_embedding(X, D, f):
            raise AmalgamationFailure("strategy map is not an embedding", {"map": f})


# -- rational metric spaces over a finite distance set -----------------------


def _dist_name(q: Fraction) -> str:
    return f"d={q}"


def metric_space(distances: Sequence, n: int, d: dict[tuple[int, int], object]) -> Structure:
    """Encode a metric on {0..n-1}: (x, y) in R_q iff d(x, y) = q."""
    dset = sorted({Fraction(q) for q in distances})
    sig = Signature.of(*((_dist_name(q), 2) for q in dset))
    rel: dict[str, set] = {_dist_name(q): set() for q in dset}
    for (x, y), q in d.items():
        rel[_dist_name(Fraction(q))] |= {(x, y), (y, x)}
    return Structure.build(sig, n, rel)


def distance_table(A: Structure) -> dict[tuple[int, int], Fraction]:
    out = {}
    for name, table in zip(A.signature.names, A.tables):
        q = Fraction(name[2:])
        for x, y in table:
            out[(x, y)] = q
    return out


def diameter(A: Structure) -> Fraction:
    return max(distance_table(A).values(), default=Fraction(0))


def qmetric(distances: Iterable) -> ClassSpec:
    dset = sorted({Fraction(q) for q in distances})
    if not dset or any(q <= 0 for q in dset):
        raise ValueError("distance set must be a nonempty set of positive rationals")
    sig = Signature.of(*((_dist_name(q), 2) for q in dset))
    names = [_dist_name(q) for q in dset]

    def make(n: int, d: dict) -> Structure:
        rel: dict[str, set] = {nm: set() for nm in names}
        for (x, y), q in d.items():
            rel[_dist_name(q)] |= {(x, y), (y, x)}
        return Structure.build(sig, n, rel)

    def violation(A: Structure) -> Optional[Violation]:
        seen: dict[tuple[int, int], Fraction] = {}
        for q, table in zip(dset, A.tables):
            for x, y in sorted(table):
                if x == y:
                    return Violation("irreflexivity", (x, y))
                if (y, x) not in table:
                    return Violation("symmetry", (x, y))
                if (x, y) in seen:
                    return Violation("single distance", (x, y))
                seen[(x, y)] = q
        for x, y in itertools.combinations(range(A.size), 2):
            if (x, y) not in seen:
                return Violation("totality", (x, y))
        for x, y, z in itertools.permutations(range(A.size), 3):
            if seen[(x, z)] > seen[(x, y)] + seen[(y, z)]:
                return Violation("triangle", (x, y, z))
        return None

    def extend(S: Structure) -> Iterable[Structure]:
        n = S.size
        base = distance_table(S)
        for ds in itertools.product(dset, repeat=n):
            d = {k: v for k, v in base.items() if k[0] < k[1]}
            d.update({(x, n): q for x, q in enumerate(ds)})
            yield make(n + 1, d)

    def amalgam_strategy(A, B, C, alpha, beta):
        if A.size == 0:
            return jep(B, C)
        size, i, j, b_only, c_only = glue(B, C, alpha, beta)
        dB, dC = distance_table(B), distance_table(C)
        d: dict[tuple[int, int], Fraction] = {}
        for (x, y), q in dB.items():
            d[(x, y)] = q
        for (x, y), q in dC.items():
            d[(j[x], j[y])] = q
        jinv = {v: k for k, v in enumerate(j)}
        for b in b_only:
            for c in c_only:
                value = min(dB[(b, alpha[a])] + dC[(beta[a], jinv[c])] for a in range(A.size))
                if value not in dset:
                    raise AmalgamationFailure(
                        f"shortest-path distance {value} not in distance set",
                        {"b": b, "c": jinv[c], "distance": str(value)},
                    )
                d[(b, c)] = d[(c, b)] = value
        return make(size, {k: v for k, v in d.items() if k[0] < k[1]}), i, j

    def jep(A, B):
        need = max(diameter(A), diameter(B))
        legal = [q for q in dset if q >= need]
        if not legal:
            raise AmalgamationFailure(
                "no cross distance at least the diameters", {"diameter": str(need)}
            )
        L = legal[-1]
        size, i, j, _, _ = glue(A, B, (), ())
        d = {k: v for k, v in distance_table(A).items() if k[0] < k[1]}
        for (x, y), q in distance_table(B).items():
            if x < y:
                d[(j[x], j[y])] = q
        for x in range(A.size):
            for y in range(B.size):
                d[(x, j[y])] = L
        return make(size, d), i, j

    return ClassSpec(
        name="qmetric[" + ",".join(str(q) for q in dset) + "]",
        signature=sig,
        membership=violation,
        extend=extend,
        amalgam_strategy=amalgam_strategy,
        jep_strategy=jep,
    )


# -- graph-like built-ins ----------------------------------------------------


def _graph_extend(S: Structure) -> Iterable[Structure]:
    n = S.size
    E = S.relation("E")
    for mask in range(1 << n):
        new = {(x, n) for x in range(n) if mask >> x & 1}
        new |= {(y, x) for x, y in new}
        yield Structure(GRAPH_SIG, n + 1, (frozenset(E | new),))


def _tournament_extend(S: Structure) -> Iterable[Structure]:
    n = S.size
    E = S.relation("E")
    for mask in range(1 << n):
        new = {(n, x) if mask >> x & 1 else (x, n) for x in range(n)}
        yield Structure(GRAPH_SIG, n + 1, (frozenset(E | new),))


def _order_extend(S: Structure) -> Iterable[Structure]:
    yield chain(S.size + 1)


def _graphs() -> ClassSpec:
    strategy = _free_amalgam(GRAPH_SIG, None)
    return ClassSpec(
        "graphs", GRAPH_SIG, _graph_violation, _graph_extend,
        amalgam_strategy=strategy, jep_strategy=_joint_via_amalgam(GRAPH_SIG, strategy),
    )


def _linear_orders() -> ClassSpec:
    strategy = _order_amalgam
    return ClassSpec(
        "linear-orders", ORDER_SIG, _order_violation, _order_extend,
        amalgam_strategy=strategy, jep_strategy=_joint_via_amalgam(ORDER_SIG, strategy),
    )


def _tournaments() -> ClassSpec:
    strategy = _free_amalgam(GRAPH_SIG, "E")
    return ClassSpec(
        "tournaments", GRAPH_SIG, _tournament_violation, _tournament_extend,
        amalgam_strategy=strategy, jep_strategy=_joint_via_amalgam(GRAPH_SIG, strategy),
    )


GRAPHS = _graphs()
LINEAR_ORDERS = _linear_orders()
TOURNAMENTS = _tournaments()

BUILTIN = {spec.name: spec for spec in (GRAPHS, LINEAR_ORDERS, TOURNAMENTS)}


def get_class(name: str, distances: Optional[Iterable] = None) -> ClassSpec:
    if name == "qmetric":
        if not distances:
            raise ValueError("qmetric needs a distance list")
        return qmetric(distances)
    try:
        return BUILTIN[name]
    except KeyError:
        raise ValueError(
            f"unknown class {name!r}; choose from {sorted(BUILTIN) + ['qmetric']}"
        ) from None


__all__ = [
    "AmalgamationFailure", "ClassSpec", "GRAPHS", "GRAPH_SIG", "LINEAR_ORDERS",
    "ORDER_SIG", "TOURNAMENTS", "Violation", "amalgam", "chain", "complete_graph",
    "cycle_graph", "diameter", "distance_table", "edges_of", "enumerate_members",
    "get_class", "glue", "graph", "is_member", "joint_embed",
    "members_of_size", "metric_space", "path_graph", "qmetric", "tournament",
]
