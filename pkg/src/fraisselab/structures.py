"""Finite relational structures, embeddings, isomorphisms and automorphisms.

Every structure lives on the universe ``{0, ..., n-1}``; maps between
structures are plain tuples ``m`` with ``m[x]`` the image of ``x``.  A partial
map is a tuple of ``(source, target)`` pairs sorted by source.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

Embedding = tuple[int, ...]
PartialMap = tuple[tuple[int, int], ...]


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    relations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in {names}")
        for name, arity in self.relations:
            if name == "=":
                raise ValueError("equality is implicit and cannot be declared")
            if arity < 1:
                raise ValueError(f"relation {name!r} has arity {arity} < 1")

    @classmethod
    def of(cls, *relations: tuple[str, int]) -> "Signature":
        return cls(tuple((str(n), int(a)) for n, a in relations))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)

    def arity(self, name: str) -> int:
        for n, a in self.relations:
            if n == name:
                return a
        raise KeyError(name)


@dataclass(frozen=True)
class Structure:
    """A finite relational structure.

    ``tables`` is aligned with ``signature.relations``; each table is the
    frozenset of tuples in that relation.
    """

    signature: Signature
    size: int
    tables: tuple[frozenset[tuple[int, ...]], ...]

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("negative size")
        if len(self.tables) != len(self.signature.relations):
            raise ValueError("one table per relation symbol required")
        for (name, arity), table in zip(self.signature.relations, self.tables):
            for t in table:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} in {name!r} has wrong arity")
                if any(not 0 <= x < self.size for x in t):
                    raise ValueError(f"tuple {t} in {name!r} leaves the universe")

    @classmethod
    def build(
        cls,
        signature: Signature,
        size: int,
        relations: Optional[Mapping[str, Iterable[Sequence[int]]]] = None,
    ) -> "Structure":
        relations = dict(relations or {})
        unknown = set(relations) - set(signature.names)
        if unknown:
            raise ValueError(f"relations {sorted(unknown)} not in signature")
        tables = tuple(
            frozenset(tuple(int(x) for x in t) for t in relations.get(name, ()))
            for name in signature.names
        )
        return cls(signature, size, tables)

    def relation(self, name: str) -> frozenset[tuple[int, ...]]:
        return self.tables[self.signature.names.index(name)]

    def holds(self, name: str, *args: int) -> bool:
        return tuple(args) in self.relation(name)

    def as_dict(self) -> dict[str, list[list[int]]]:
        return {
            name: [list(t) for t in sorted(table)]
            for name, table in zip(self.signature.names, self.tables)
        }

    def relabel(self, perm: Sequence[int]) -> "Structure":
        """Return the copy in which element ``x`` is renamed ``perm[x]``."""
        return Structure(
            self.signature,
            self.size,
            tuple(
                frozenset(tuple(perm[x] for x in t) for t in table)
                for table in self.tables
            ),
        )

    def __repr__(self):
        body = ", ".join(
            f"{name}={sorted(table)}"
            for name, table in zip(self.signature.names, self.tables)
            if table
        )
        return f"Structure(n={self.size}{', ' + body if body else ''})"


def _require_same_signature(A: Structure, B: Structure) -> None:
    if A.signature != B.signature:
        raise SignatureMismatch(
            f"signature mismatch: {A.signature.relations} vs {B.signature.relations}"
        )


def is_embedding(A: Structure, B: Structure, m: Sequence[int]) -> bool:
    _require_same_signature(A, B)
    m = tuple(m)
    if len(m) != A.size:
        raise ValueError(f"map has length {len(m)}, expected {A.size}")
    if any(not 0 <= y < B.size for y in m):
        raise ValueError("map leaves the target universe")
    if len(set(m)) != len(m):
        return False
    for (_, arity), ta, tb in zip(A.signature.relations, A.tables, B.tables):
        for t in itertools.product(range(A.size), repeat=arity):
            if (t in ta) != (tuple(m[x] for x in t) in tb):
                return False
    return True


class _EmbeddingSearch:
    """Backtracking enumeration of embeddings in lexicographic order."""

    def __init__(self, A: Structure, B: Structure):
        _require_same_signature(A, B)
        self.A, self.B = A, B
        # tuples of A whose largest entry is i, checked once i is assigned
        self.a_by_max: list[list[tuple[int, tuple[int, ...]]]] = [
            [] for _ in range(A.size)
        ]
        for r, table in enumerate(A.tables):
            for t in table:
                self.a_by_max[max(t)].append((r, t))
        self.b_touching: list[list[tuple[int, tuple[int, ...]]]] = [
            [] for _ in range(B.size)
        ]
        for r, table in enumerate(B.tables):
            for t in table:
                for y in set(t):
                    self.b_touching[y].append((r, t))

    def run(self, fixed: Optional[Mapping[int, int]] = None) -> Iterator[Embedding]:
        A, B = self.A, self.B
        fixed = dict(fixed or {})
        for x, y in fixed.items():
            if not (0 <= x < A.size and 0 <= y < B.size):
                raise ValueError(f"fixed pair {x}->{y} out of range")
        if len(set(fixed.values())) != len(fixed):
            return
        reserved = set(fixed.values())
        m = [-1] * A.size
        inv: dict[int, int] = {}

        def consistent(i: int, y: int) -> bool:
            for r, t in self.a_by_max[i]:
                if tuple(m[x] for x in t) not in B.tables[r]:
                    return False
            for r, t in self.b_touching[y]:
                if all(v in inv for v in t):
                    if tuple(inv[v] for v in t) not in A.tables[r]:
                        return False
            return True

        def extend(i: int) -> Iterator[Embedding]:
            if i == A.size:
                yield tuple(m)
                return
            if i in fixed:
                candidates: Iterable[int] = (fixed[i],)
            else:
                candidates = (y for y in range(B.size) if y not in reserved)
            for y in candidates:
                if y in inv:
                    continue
                m[i] = y
                inv[y] = i
                if consistent(i, y):
                    yield from extend(i + 1)
                del inv[y]
                m[i] = -1

        yield from extend(0)


def iter_embeddings(
    A: Structure, B: Structure, fixed: Optional[Mapping[int, int]] = None
) -> Iterator[Embedding]:
    """Yield embeddings A -> B in lexicographic order, optionally pinning
    some images via ``fixed``."""
    return _EmbeddingSearch(A, B).run(fixed)


def embeddings(A: Structure, B: Structure) -> list[Embedding]:
    return list(iter_embeddings(A, B))


def first_embedding(
    A: Structure, B: Structure, fixed: Optional[Mapping[int, int]] = None
) -> Optional[Embedding]:
    return next(iter_embeddings(A, B, fixed), None)


def find_isomorphism(A: Structure, B: Structure) -> Optional[Embedding]:
    _require_same_signature(A, B)
    if A.size != B.size:
        return None
    return first_embedding(A, B)


def automorphisms(A: Structure) -> list[Embedding]:
    return embeddings(A, A)


def is_rigid(A: Structure) -> bool:
    it = iter_embeddings(A, A)
    next(it)
    return next(it, None) is None


def compose(f: Sequence[int], g: Sequence[int]) -> Embedding:
    """``f after g``: x -> f[g[x]]."""
    return tuple(f[y] for y in g)


def inverse(p: Sequence[int]) -> Embedding:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def induced_substructure(A: Structure, subset: Iterable[int]) -> Structure:
    """Restrict A to ``subset``; element ``sorted(subset)[k]`` becomes ``k``."""
    elems = sorted(set(subset))
    for x in elems:
        if not 0 <= x < A.size:
            raise ValueError(f"element {x} outside universe of size {A.size}")
    index = {x: k for k, x in enumerate(elems)}
    tables = tuple(
        frozenset(
            tuple(index[x] for x in t) for t in table if all(x in index for x in t)
        )
        for table in A.tables
    )
    return Structure(A.signature, len(elems), tables)


def is_partial_isomorphism(A: Structure, B: Structure, pairs: Iterable[tuple[int, int]]) -> bool:
    pairs = sorted(pairs)
    dom = [x for x, _ in pairs]
    img = [y for _, y in pairs]
    if len(set(dom)) != len(dom) or len(set(img)) != len(img):
        return False
    if any(not 0 <= x < A.size for x in dom) or any(not 0 <= y < B.size for y in img):
        return False
    sub_a = induced_substructure(A, dom)
    # the induced copy of img, in the order dictated by dom
    order = sorted(range(len(img)), key=lambda k: img[k])
    sub_b = induced_substructure(B, img)
    m = [0] * len(dom)
    for rank, k in enumerate(order):
        m[k] = rank
    return is_embedding(sub_a, sub_b, m)


# -- canonical forms --------------------------------------------------------


def encoding(A: Structure) -> int:
    """Concatenated relation-table bit string, first tuple most significant."""
    n = A.size
    code = 0
    for (_, arity), table in zip(A.signature.relations, A.tables):
        width = n**arity
        block = 0
        for t in table:
            idx = 0
            for x in t:
                idx = idx * n + x
            block |= 1 << (width - 1 - idx)
        code = (code << width) | block
    return code


def _incidences(A: Structure) -> list[list[tuple[tuple[int, int], tuple[int, ...]]]]:
    inc: list[list] = [[] for _ in range(A.size)]
    for r, table in enumerate(A.tables):
        for t in table:
            for pos, x in enumerate(t):
                inc[x].append(((r, pos), t))
    return inc


def _refine(colour: list[int], inc) -> list[int]:
    """Colour refinement to a stable partition.

    New colours are ranks of (old colour, incidence signature), so the cell
    order stays isomorphism-invariant and refines the old order.
    """
    n = len(colour)
    while True:
        get = colour.__getitem__
        sig = [
            (colour[v], tuple(sorted([(rp, *map(get, t)) for rp, t in inc[v]])))
            for v in range(n)
        ]
        palette = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(palette) == len(set(colour)):
            return new
        colour = new


def _code_under(A: Structure, perm: Sequence[int]) -> int:
    n = A.size
    code = 0
    for (_, arity), table in zip(A.signature.relations, A.tables):
        width = n**arity
        block = 0
        for t in table:
            idx = 0
            for x in t:
                idx = idx * n + perm[x]
            block |= 1 << (width - 1 - idx)
        code = (code << width) | block
    return code


@lru_cache(maxsize=1 << 16)
def canonical_labeling(A: Structure) -> Embedding:
    """A relabeling ``perm`` such that ``A.relabel(perm)`` is canonical.

    Individualization-refinement: split the first non-singleton cell on each
    of its vertices in turn, refine, recurse; the leaf with the least code
    wins.
    """
    if A.size == 0:
        return ()
    inc = _incidences(A)
    best: list = [None, None]

    def search(colour: list[int]) -> None:
        colour = _refine(colour, inc)
        if len(set(colour)) == A.size:
            code = _code_under(A, colour)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, tuple(colour)
            return
        counts: dict[int, int] = {}
        for c in colour:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(A.size):
            if colour[v] == target:
                search([2 * c + (0 if (w == v or c != target) else 1) for w, c in enumerate(colour)])

    search([0] * A.size)
    return best[1]


def canonical_form(A: Structure) -> Structure:
    return A.relabel(canonical_labeling(A))


def canonical_key(A: Structure) -> tuple[int, int]:
    """Sort key ``(size, encoding)`` of the canonical form."""
    return (A.size, encoding(canonical_form(A)))


def is_isomorphic(A: Structure, B: Structure) -> bool:
    return find_isomorphism(A, B) is not None
