"""Partial automorphisms and exhaustive EPPA witness search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .catalogs import ClassSpec, enumerate_members
from .ramsey import SearchCapExceeded
from .structures import (
    Embedding,
    PartialMap,
    Structure,
    first_embedding,
    is_embedding,
    is_partial_isomorphism,
    iter_embeddings,
)


def partial_automorphisms(A: Structure) -> list[PartialMap]:
    """Isomorphisms between induced substructures of A, ordered by domain
    size, then domain, then images."""
    out = []
    for k in range(A.size + 1):
        for dom in itertools.combinations(range(A.size), k):
            for img in itertools.permutations(range(A.size), k):
                pairs = tuple(zip(dom, img))
                if is_partial_isomorphism(A, A, pairs):
                    out.append(pairs)
    return out


@dataclass
class EppaCertificate:
    A: Structure
    B: Structure
    embedding: Embedding
    extensions: dict[PartialMap, Embedding]

    def verify(self) -> bool:
        e = self.embedding
        if not is_embedding(self.A, self.B, e):
            return False
        if set(self.extensions) != set(partial_automorphisms(self.A)):
            return False
        for p, g in self.extensions.items():
            if len(g) != self.B.size or not is_embedding(self.B, self.B, g):
                return False
            if any(g[e[x]] != e[y] for x, y in p):
                return False
        return True


@dataclass
class EppaFailure:
    """Per tried embedding, the first partial automorphism with no extension."""

    A: Structure
    B: Structure
    obstructions: list[tuple[Embedding, PartialMap]] = field(default_factory=list)


def eppa_check(A: Structure, B: Structure, cap: Optional[int] = None) -> EppaCertificate | EppaFailure:
    """Look for e: A -> B along which every partial automorphism p of A
    extends to some g in Aut(B) with g∘e = e∘p on dom p."""
    partials = partial_automorphisms(A)
    failure = EppaFailure(A, B)
    work = 0
    for e in iter_embeddings(A, B):
        extensions: dict[PartialMap, Embedding] = {}
        for p in partials:
            work += 1
            if cap is not None and work > cap:
                raise SearchCapExceeded(f"EPPA extension search exceeded {cap} steps")
            g = first_embedding(B, B, {e[x]: e[y] for x, y in p})
            if g is None:
                failure.obstructions.append((e, p))
                break
            extensions[p] = g
        else:
            return EppaCertificate(A, B, e, extensions)
    return failure


@dataclass
class EppaSearch:
    witness: Optional[Structure]
    certificate: Optional[EppaCertificate]
    rejected: list[EppaFailure]
    bound: int

    @property
    def exhausted(self) -> bool:
        return self.witness is None


def eppa_witness_search(
    spec: ClassSpec, A: Structure, size_bound: int, cap: Optional[int] = None
) -> EppaSearch:
    """Least member B (by size, then canonical order) that is an EPPA witness
    for A."""
    if spec.membership(A) is not None:
        raise ValueError(f"{A} is not a member of {spec.name}")
    rejected = []
    for B in enumerate_members(spec, size_bound):
        if B.size < A.size:
            continue
        result = eppa_check(A, B, cap)
        if isinstance(result, EppaCertificate):
            return EppaSearch(B, result, rejected, size_bound)
        rejected.append(result)
    return EppaSearch(None, None, rejected, size_bound)
