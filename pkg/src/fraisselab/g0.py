"""Finite levels of the G0 graph on bit strings.

Level n lives on all bit strings of length n.  It is built by doubling:
level k + 1 is two copies of level k (suffix 0 and suffix 1) joined by the
single edge between the two copies of s_k.  Equivalently its edges are the
pairs s_k + e + z, s_k + (1 - e) + z for k < n and |z| = n - k - 1.

Only finite levels are computed.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .catalogs import GRAPH_SIG
from .structures import Structure

Edge = tuple[str, str]


def _edge(u: str, v: str) -> Edge:
    return (u, v) if u < v else (v, u)


def bit_strings(n: int) -> list[str]:
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


@dataclass(frozen=True)
class SparseSet:
    levels: tuple[str, ...]  # levels[n] is the unique member of length n

    def __post_init__(self):
        for n, s in enumerate(self.levels):
            if len(s) != n or set(s) - {"0", "1"}:
                raise ValueError(f"level {n} must be a bit string of length {n}, got {s!r}")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def dense_up_to(self) -> int:
        """Largest m such that every string of length <= m has an extension
        in S (-1 if even the empty string has none)."""
        m = -1
        while True:
            want = bit_strings(m + 1)
            if not all(any(s.startswith(t) for s in self.levels) for t in want):
                return m
            m += 1
            if m > self.depth:
                return m - 1


def shortlex(n: int) -> str:
    """The n-th binary string in the order '', 0, 1, 00, 01, 10, 11, 000, ..."""
    return bin(n + 1)[3:]


def canonical_sparse_dense(depth: int) -> SparseSet:
    """s_n is the n-th string in shortlex order, right-padded with zeros."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    levels = []
    for n in range(depth + 1):
        t = shortlex(n)
        if len(t) > n:
            raise AssertionError(f"shortlex string {t!r} longer than its index {n}")
        levels.append(t.ljust(n, "0"))
    return SparseSet(tuple(levels))


@dataclass(frozen=True)
class StringGraph:
    vertices: tuple[str, ...]
    edges: frozenset[Edge]

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


POINT = StringGraph(("",), frozenset())


def attach(H: StringGraph, u: str) -> StringGraph:
    """Two copies of H (suffixes 0 and 1) plus the edge between the copies of u."""
    if u not in H.vertices:
        raise ValueError(f"{u!r} is not a vertex")
    vertices = tuple(sorted(v + b for v in H.vertices for b in "01"))
    edges = {_edge(a + b, c + b) for a, c in H.edges for b in "01"}
    edges.add(_edge(u + "0", u + "1"))
    return StringGraph(vertices, frozenset(edges))


@dataclass(frozen=True)
class G0Level:
    n: int
    graph: StringGraph
    generator: SparseSet

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges


def _need_depth(S: SparseSet, n: int) -> None:
    if n < 0:
        raise ValueError("level must be >= 0")
    if n > 0 and S.depth < n - 1:
        raise ValueError(f"S is populated to depth {S.depth}; level {n} needs {n - 1}")


def g0_level(S: SparseSet, n: int) -> G0Level:
    _need_depth(S, n)
    H = POINT
    for k in range(n):
        H = attach(H, S.levels[k])
    return G0Level(n, H, S)


def g0_edges_direct(S: SparseSet, n: int) -> frozenset[Edge]:
    _need_depth(S, n)
    edges = set()
    for k in range(n):
        s = S.levels[k]
        for z in bit_strings(n - k - 1):
            edges.add(_edge(s + "0" + z, s + "1" + z))
    return frozenset(edges)


# -- coloring and validation ------------------------------------------------


def adjacency(G) -> dict:
    if isinstance(G, StringGraph):
        return G.adjacency()
    if isinstance(G, G0Level):
        return G.graph.adjacency()
    if isinstance(G, Structure):
        adj: dict[int, set[int]] = {v: set() for v in range(G.size)}
        for u, v in G.relation("E"):
            adj[u].add(v)
        return adj
    return {v: set(ns) for v, ns in G.items()}


def greedy_color(G, order: Sequence[Hashable]) -> dict:
    """Give each vertex the least color (from 0) unused by its neighbors that
    come earlier in ``order``."""
    adj = adjacency(G)
    if sorted(map(repr, order)) != sorted(map(repr, adj)) or len(set(order)) != len(order):
        raise ValueError("order must list every vertex exactly once")
    color: dict = {}
    for v in order:
        taken = {color[w] for w in adj[v] if w in color}
        c = 0
        while c in taken:
            c += 1
        color[v] = c
    return color


def is_proper(G, color: Mapping) -> bool:
    adj = adjacency(G)
    return all(color[u] != color[v] for u in adj for v in adj[u])


def max_degree(G) -> int:
    return max((len(ns) for ns in adjacency(G).values()), default=0)


def independence_check(G, X: Iterable[Hashable]) -> bool:
    adj = adjacency(G)
    X = set(X)
    missing = X - set(adj)
    if missing:
        raise ValueError(f"not vertices: {sorted(map(str, missing))}")
    return all(not (adj[v] & X) for v in X)


def components(G) -> int:
    adj = adjacency(G)
    seen: set = set()
    count = 0
    for root in adj:
        if root in seen:
            continue
        count += 1
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return count


def is_acyclic(G) -> bool:
    adj = adjacency(G)
    n_edges = sum(len(ns) for ns in adj.values()) // 2
    # a forest has exactly |V| - (#components) edges
    return n_edges == len(adj) - components(G)


def level_summary(level: G0Level) -> dict:
    order = list(level.vertices)
    coloring = greedy_color(level, order)
    return {
        "n": level.n,
        "vertices": len(level.vertices),
        "edges": len(level.edges),
        "components": components(level),
        "acyclic": is_acyclic(level),
        "max_degree": max_degree(level),
        "colors_used": len(set(coloring.values())),
        "single_flip": all(
            sum(a != b for a, b in zip(u, v)) == 1 for u, v in level.edges
        ),
        "matches_direct": level.edges == g0_edges_direct(level.generator, level.n),
    }


def to_dot(level: G0Level) -> str:
    index = {v: k for k, v in enumerate(level.vertices)}
    lines = [f"graph G0_{level.n} {{"]
    for v in level.vertices:
        lines.append(f'  {index[v]} [label="{v or "ε"}"];')
    for u, v in sorted(level.edges):
        lines.append(f"  {index[u]} -- {index[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def as_structure(level: G0Level) -> Structure:
    index = {v: k for k, v in enumerate(level.vertices)}
    E = {(index[u], index[v]) for u, v in level.edges}
    E |= {(b, a) for a, b in E}
    return Structure.build(GRAPH_SIG, len(level.vertices), {"E": E})
