"""Slow, obviously-correct reference implementations used only by the tests."""

import itertools

from fraisselab.structures import Structure


def all_tuples(n, arity):
    return itertools.product(range(n), repeat=arity)


def is_embedding_naive(A: Structure, B: Structure, m) -> bool:
    if len(m) != A.size or len(set(m)) != len(m) or any(not 0 <= y < B.size for y in m):
        return False
    for (name, arity), ta, tb in zip(A.signature.relations, A.tables, B.tables):
        for t in all_tuples(A.size, arity):
            if (t in ta) != (tuple(m[x] for x in t) in tb):
                return False
    return True


def embeddings_naive(A, B):
    return [m for m in itertools.permutations(range(B.size), A.size) if is_embedding_naive(A, B, m)]


def isomorphic_naive(A, B) -> bool:
    return A.size == B.size and A.signature == B.signature and bool(embeddings_naive(A, B))


def all_structures(signature, n):
    """Every structure on {0..n-1} over a signature of binary relations."""
    pairs = [p for p in all_tuples(n, 2)]
    per_rel = [list(itertools.product((False, True), repeat=len(pairs))) for _ in signature.relations]
    for choice in itertools.product(*per_rel):
        rel = {
            name: {p for p, bit in zip(pairs, bits) if bit}
            for (name, _), bits in zip(signature.relations, choice)
        }
        yield Structure.build(signature, n, rel)


def iso_classes(structs):
    reps = []
    for S in structs:
        if not any(isomorphic_naive(S, R) for R in reps):
            reps.append(S)
    return reps


def monochromatic_copy(colors_of, emb_ab, emb_bc):
    """Is there beta whose copy of B gets one color under ``colors_of``?"""
    for beta in emb_bc:
        seen = {colors_of[tuple(beta[x] for x in a)] for a in emb_ab}
        if len(seen) == 1:
            return True
    return False


def arrows_naive(A, B, C, k) -> bool:
    """C -> (B)^A_k by trying every coloring."""
    emb_ac = embeddings_naive(A, C)
    emb_ab = embeddings_naive(A, B)
    emb_bc = embeddings_naive(B, C)
    for colors in itertools.product(range(k), repeat=len(emb_ac)):
        if not monochromatic_copy(dict(zip(emb_ac, colors)), emb_ab, emb_bc):
            return False
    return True


def longest_path(nodes) -> int:
    """Length of the longest root-to-leaf path in a prefix-closed node set."""
    return max(len(s) for s in nodes)
