"""Finite trees on the naturals: Kleene–Brouwer order, rank, pruning,
section trees.

Convention: a proper extension is *smaller* than its prefixes, so on a
finite tree the root is the maximum and the order is a well-order exactly
when the tree has no infinite branch.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

Node = tuple[int, ...]


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class FinTree:
    nodes: frozenset[Node]

    def __post_init__(self):
        for s in self.nodes:
            if any(x < 0 for x in s):
                raise ValueError(f"node {s} has a negative entry")
            if s and s[:-1] not in self.nodes:
                raise ValueError(f"tree is not prefix-closed: {s[:-1]} missing below {s}")

    @classmethod
    def of(cls, nodes: Iterable[Sequence[int]]) -> "FinTree":
        return cls(frozenset(tuple(s) for s in nodes))

    @classmethod
    def closure(cls, nodes: Iterable[Sequence[int]]) -> "FinTree":
        """The least tree containing ``nodes``."""
        out = set()
        for s in nodes:
            s = tuple(s)
            out.update(s[:k] for k in range(len(s) + 1))
        return cls(frozenset(out))

    def children(self, s: Node) -> list[Node]:
        return sorted(t for t in self.nodes if len(t) == len(s) + 1 and t[:-1] == s)

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, s):
        return tuple(s) in self.nodes


def kb_compare(s: Sequence[int], t: Sequence[int]) -> Order:
    s, t = tuple(s), tuple(t)
    for a, b in zip(s, t):
        if a != b:
            return Order.LESS if a < b else Order.GREATER
    if len(s) == len(t):
        return Order.EQUAL
    return Order.LESS if len(s) > len(t) else Order.GREATER


kb_key = cmp_to_key(kb_compare)


def kb_sort(T: FinTree) -> list[Node]:
    return sorted(T.nodes, key=kb_key)


def rank(T: FinTree) -> int:
    if not T.nodes:
        raise ValueError("rank of the empty tree is undefined")
    heights: dict[Node, int] = {}
    for s in sorted(T.nodes, key=len, reverse=True):
        kids = [heights[t] for t in T.children(s)]
        heights[s] = 1 + max(kids) if kids else 0
    return heights[()]


def is_pruned_up_to(T: FinTree, depth: int) -> bool:
    has_child = {s[:-1] for s in T.nodes if s}
    return all(s in has_child for s in T.nodes if len(s) < depth)


@dataclass(frozen=True)
class PairTree:
    nodes: frozenset[tuple[Node, Node]]

    def __post_init__(self):
        for a, s in self.nodes:
            if len(a) != len(s):
                raise ValueError(f"pair ({a}, {s}) has unequal lengths")
            if a and (a[:-1], s[:-1]) not in self.nodes:
                raise ValueError(f"pair tree is not prefix-closed at ({a}, {s})")

    @classmethod
    def of(cls, pairs: Iterable[tuple[Sequence[int], Sequence[int]]]) -> "PairTree":
        return cls(frozenset((tuple(a), tuple(s)) for a, s in pairs))


def section_tree(P: PairTree, a: Sequence[int]) -> FinTree:
    """Second coordinates s with (a|len(s), s) in P, for len(s) <= len(a)."""
    a = tuple(a)
    return FinTree(
        frozenset(s for prefix, s in P.nodes if len(s) <= len(a) and prefix == a[: len(s)])
    )
