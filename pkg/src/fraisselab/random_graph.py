"""Seeded G(n, p) samples, the one-point extension property, and bit graphs.

Samples are reproducible across implementations: the generator is SplitMix64
(constants below), seeded with the 64-bit seed, drawing one 64-bit word per
pair (i, j), i < j, in row-major order.  The pair is an edge iff
``word < p * 2**64`` evaluated exactly for rational p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .catalogs import GRAPH_SIG, graph
from .structures import Structure

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def splitmix64(seed: int) -> Iterator[int]:
    state = seed & MASK64
    while True:
        state = (state + GOLDEN_GAMMA) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        yield z ^ (z >> 31)


@dataclass(frozen=True)
class GnpSample:
    n: int
    p: Fraction
    seed: int
    graph: Structure


def sample_gnp(n: int, p: Union[Fraction, str, int, float], seed: int) -> GnpSample:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    threshold = p.numerator << 64
    draws = splitmix64(seed)
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if next(draws) * p.denominator < threshold
    ]
    return GnpSample(n, p, seed, graph(n, edges))


def adjacency_masks(G: Structure) -> list[int]:
    masks = [0] * G.size
    for u, v in G.relation("E"):
        masks[u] |= 1 << v
    return masks


def extension_witness(G: Structure, A: Iterable[int], B: Iterable[int]) -> Optional[int]:
    """Least vertex outside A ∪ B adjacent to all of A and to none of B."""
    A, B = set(A), set(B)
    if A & B:
        raise ValueError(f"A and B overlap in {sorted(A & B)}")
    masks = adjacency_masks(G)
    return _witness(masks, G.size, A, B)


def _witness(masks: Sequence[int], n: int, A, B) -> Optional[int]:
    pool = (1 << n) - 1
    for a in A:
        pool &= masks[a]
    for b in B:
        pool &= ~masks[b]
    for x in itertools.chain(A, B):
        pool &= ~(1 << x)
    if not pool:
        return None
    return (pool & -pool).bit_length() - 1


def extension_property_level(
    G: Structure, a_max: int, b_max: int
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All disjoint (A, B) with |A| <= a_max, |B| <= b_max lacking a witness;
    an empty list means the level passes."""
    masks = adjacency_masks(G)
    verts = range(G.size)
    failing = []
    for ka in range(a_max + 1):
        for A in itertools.combinations(verts, ka):
            rest = [v for v in verts if v not in A]
            for kb in range(b_max + 1):
                for B in itertools.combinations(rest, kb):
                    if _witness(masks, G.size, A, B) is None:
                        failing.append((A, B))
    return failing


def bit_graph(n: int) -> Structure:
    """i < j adjacent iff bit i of j is set."""
    return graph(n, [(i, j) for j in range(n) for i in range(j) if j >> i & 1])


def pass_rate(
    n: int, p, seeds: Iterable[int], a_max: int = 1, b_max: int = 1
) -> dict:
    seeds = list(seeds)
    passed = [s for s in seeds if not extension_property_level(sample_gnp(n, p, s).graph, a_max, b_max)]
    return {
        "n": n,
        "p": str(Fraction(p)),
        "level": [a_max, b_max],
        "samples": len(seeds),
        "passed": len(passed),
        "failed_seeds": [s for s in seeds if s not in set(passed)],
    }


def to_dot(G: Structure, labels: Optional[Sequence[str]] = None, name: str = "G") -> str:
    if G.signature != GRAPH_SIG:
        raise ValueError("DOT export expects a graph")
    labels = labels or [str(v) for v in range(G.size)]
    lines = [f"graph {name} {{"]
    for v in range(G.size):
        lines.append(f'  {v} [label="{labels[v]}"];')
    for u, v in sorted(e for e in G.relation("E") if e[0] < e[1]):
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
