"""Exhaustive Ramsey checks for embeddings.

A k-coloring of Emb(A, C) is identified with its index: the colors, read in
the lexicographic order of Emb(A, C), are the base-k digits of the index with
the first embedding most significant.  "First bad coloring" therefore means
least index.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .catalogs import ClassSpec, enumerate_members
from .structures import (
    Embedding,
    Structure,
    automorphisms,
    compose,
    embeddings,
    is_rigid,
)

DEFAULT_CAP = 1 << 26
# colorings per scan chunk: about CHUNK_CELLS array cells, never below MIN_CHUNK
CHUNK_CELLS = 1 << 22
MIN_CHUNK = 1024


class SearchCapExceeded(RuntimeError):
    pass


class RigidityInapplicable(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    domain: tuple[Embedding, ...]
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        if len(self.colors) != len(self.domain):
            raise ValueError("one color per embedding required")
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError(f"colors must lie in 0..{self.k - 1}")

    def __call__(self, e: Embedding) -> int:
        return self.colors[self.domain.index(tuple(e))]

    @property
    def index(self) -> int:
        out = 0
        for c in self.colors:
            out = out * self.k + c
        return out


def decode(index: int, k: int, length: int) -> tuple[int, ...]:
    digits = [0] * length
    for p in range(length - 1, -1, -1):
        index, digits[p] = divmod(index, k)
    return tuple(digits)


@dataclass
class _Problem:
    """Emb(A,C), Emb(A,B), Emb(B,C) and, per beta, the indices of beta∘Emb(A,B)."""

    A: Structure
    B: Structure
    C: Structure
    emb_ac: list[Embedding]
    emb_ab: list[Embedding]
    emb_bc: list[Embedding]
    copies: np.ndarray  # (len(emb_bc), len(emb_ab)) indices into emb_ac

    @classmethod
    def build(cls, A: Structure, B: Structure, C: Structure) -> "_Problem":
        emb_ac = embeddings(A, C)
        emb_ab = embeddings(A, B)
        emb_bc = embeddings(B, C)
        where = {e: n for n, e in enumerate(emb_ac)}
        copies = np.array(
            [[where[compose(beta, alpha)] for alpha in emb_ab] for beta in emb_bc],
            dtype=np.int64,
        ).reshape(len(emb_bc), len(emb_ab))
        return cls(A, B, C, emb_ac, emb_ab, emb_bc, copies)


@dataclass
class RamseyCertificate:
    """Every coloring (or every color-permutation representative) mapped to a
    beta in Emb(B, C) on whose copy of B it is constant."""

    A: Structure
    B: Structure
    C: Structure
    k: int
    emb_ac: list[Embedding]
    emb_ab: list[Embedding]
    emb_bc: list[Embedding]
    coloring_indices: np.ndarray
    witnesses: np.ndarray
    symmetry_reduced: bool

    def witness_for(self, index: int) -> Embedding:
        pos = int(np.searchsorted(self.coloring_indices, index))
        return self.emb_bc[int(self.witnesses[pos])]

    def verify(self) -> bool:
        n = len(self.emb_ac)
        expected = _count_representatives(n, self.k) if self.symmetry_reduced else self.k**n
        if len(self.coloring_indices) != expected:
            return False
        where = {e: m for m, e in enumerate(self.emb_ac)}
        for idx, w in zip(self.coloring_indices.tolist(), self.witnesses.tolist()):
            colors = decode(idx, self.k, n)
            if self.symmetry_reduced and not _is_restricted_growth(colors):
                return False
            beta = self.emb_bc[w]
            seen = {colors[where[compose(beta, a)]] for a in self.emb_ab}
            if len(seen) > 1:
                return False
        return True


@dataclass
class BadColoring:
    """A coloring with no monochromatic copy of B; ``refutation`` holds, for
    every beta in Emb(B, C), two embeddings of A into B whose images under
    beta get different colors."""

    A: Structure
    B: Structure
    C: Structure
    coloring: Coloring
    emb_ab: list[Embedding]
    emb_bc: list[Embedding]
    refutation: list[tuple[Embedding, Embedding, Embedding]] = field(default_factory=list)
    method: str = "search"

    def verify(self) -> bool:
        if [beta for beta, _, _ in self.refutation] != self.emb_bc:
            return False
        for beta, a1, a2 in self.refutation:
            if a1 not in self.emb_ab or a2 not in self.emb_ab:
                return False
            if self.coloring(compose(beta, a1)) == self.coloring(compose(beta, a2)):
                return False
        return True


def _is_restricted_growth(colors: Sequence[int]) -> bool:
    top = -1
    for c in colors:
        if c > top + 1:
            return False
        top = max(top, c)
    return True


def _count_representatives(n: int, k: int) -> int:
    # restricted growth strings of length n over at most k symbols
    # (Stirling numbers of the second kind, summed)
    row = [1] + [0] * k
    for _ in range(n):
        new = [0] * (k + 1)
        for j in range(1, k + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return sum(row) if n else 1


def _scan(args) -> tuple[Optional[int], np.ndarray, np.ndarray]:
    """Scan coloring indices [start, stop); returns the least bad index (or
    None) and, when none is bad, the representatives with their witnesses."""
    start, stop, k, n, copies, symmetry = args
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    idx = np.arange(start, stop, dtype=np.int64)
    cols = (idx[:, None] // powers[None, :]) % k
    if symmetry and n:
        running = np.maximum.accumulate(cols, axis=1)
        prev = np.concatenate([np.full((len(idx), 1), -1), running[:, :-1]], axis=1)
        keep = (cols <= prev + 1).all(axis=1)
        idx, cols = idx[keep], cols[keep]
    n_beta, n_alpha = copies.shape
    if n_beta == 0:
        bad = int(idx[0]) if len(idx) else None
        return bad, idx[:0], idx[:0]
    if n_alpha == 0:
        return None, idx, np.zeros(len(idx), dtype=np.int64)
    picked = cols[:, copies]  # (m, n_beta, n_alpha)
    mono = (picked == picked[:, :, :1]).all(axis=2)
    good = mono.any(axis=1)
    if not good.all():
        return int(idx[np.argmin(good)]), idx[:0], idx[:0]
    return None, idx, mono.argmax(axis=1).astype(np.int64)


def _refute(problem: _Problem, colors: Sequence[int]) -> list[tuple[Embedding, Embedding, Embedding]]:
    out = []
    for b, beta in enumerate(problem.emb_bc):
        row = problem.copies[b]
        first = colors[row[0]]
        other = next(a for a in range(len(row)) if colors[row[a]] != first)
        out.append((beta, problem.emb_ab[0], problem.emb_ab[other]))
    return out


def ramsey_check(
    A: Structure,
    B: Structure,
    k: int,
    C: Structure,
    symmetry: bool = True,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> RamseyCertificate | BadColoring:
    """Decide whether every k-coloring of Emb(A, C) is constant on
    beta∘Emb(A, B) for some beta in Emb(B, C).

    With ``symmetry`` only colorings whose colors first appear in the order
    0, 1, 2, ... are scanned; monochromaticity is invariant under renaming
    colors and the least bad coloring always has this shape.  Raises
    SearchCapExceeded instead of truncating.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    problem = _Problem.build(A, B, C)
    n = len(problem.emb_ac)
    if not problem.emb_bc:
        colors = (0,) * n
        return BadColoring(
            A, B, C, Coloring(tuple(problem.emb_ac), colors, k), problem.emb_ab, [], [], "no copy of B"
        )
    total = k**n
    if total > cap:
        raise SearchCapExceeded(f"{k}^{n} = {total} colorings exceeds cap {cap}")
    per_chunk = max(MIN_CHUNK, CHUNK_CELLS // max(1, problem.copies.size))
    chunks = [
        (s, min(s + per_chunk, total), k, n, problem.copies, symmetry)
        for s in range(0, total, per_chunk)
    ]
    reps: list[np.ndarray] = []
    wits: list[np.ndarray] = []
    bad: Optional[int] = None
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for found, r, w in pool.map(_scan, chunks):
                if found is not None:
                    bad = found
                    break
                reps.append(r)
                wits.append(w)
    else:
        for chunk in chunks:
            found, r, w = _scan(chunk)
            if found is not None:
                bad = found
                break
            reps.append(r)
            wits.append(w)
    if bad is not None:
        colors = decode(bad, k, n)
        return BadColoring(
            A, B, C, Coloring(tuple(problem.emb_ac), colors, k),
            problem.emb_ab, problem.emb_bc, _refute(problem, colors),
        )
    return RamseyCertificate(
        A, B, C, k, problem.emb_ac, problem.emb_ab, problem.emb_bc,
        np.concatenate(reps), np.concatenate(wits), symmetry,
    )


def rigidity_refutation(A: Structure, C: Structure, B: Optional[Structure] = None) -> BadColoring:
    """Color Emb(A, C) by Aut(A): fix an isomorphism g from each copy A' of A
    in C back onto A and color alpha by g∘alpha.

    Any beta∘Emb(A, B) contains beta∘alpha∘Aut(A) and so meets every color,
    hence no copy of B (default B = A) is monochromatic.
    """
    B = A if B is None else B
    auts = automorphisms(A)
    if len(auts) == 1:
        raise RigidityInapplicable("A is rigid; the rigidity coloring is inapplicable")
    problem = _Problem.build(A, B, C)
    if not problem.emb_ac:
        raise RigidityInapplicable("C contains no copy of A")
    if not problem.emb_ab:
        raise RigidityInapplicable("B contains no copy of A")
    color_of = {g: n for n, g in enumerate(auts)}
    back_to_a: dict[frozenset, dict[int, int]] = {}
    colors = []
    for alpha in problem.emb_ac:
        image = frozenset(alpha)
        if image not in back_to_a:
            # the least embedding onto this copy fixes g
            back_to_a[image] = {y: x for x, y in enumerate(alpha)}
        g = back_to_a[image]
        colors.append(color_of[tuple(g[y] for y in alpha)])
    coloring = Coloring(tuple(problem.emb_ac), tuple(colors), len(auts))
    return BadColoring(
        A, B, C, coloring, problem.emb_ab, problem.emb_bc,
        _refute(problem, colors),
        "rigidity",
    )


@dataclass
class WitnessSearch:
    witness: Optional[Structure]
    certificate: Optional[RamseyCertificate]
    failures: list[BadColoring]
    bound: int

    @property
    def exhausted(self) -> bool:
        return self.witness is None

    def summary(self) -> list[tuple[int, str]]:
        rows = [(bad.C.size, f"bad ({bad.method})") for bad in self.failures]
        if self.witness is not None:
            rows.append((self.witness.size, "witness"))
        return rows


def ramsey_witness_search(
    spec: ClassSpec,
    A: Structure,
    B: Structure,
    k: int,
    size_bound: int,
    symmetry: bool = True,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> WitnessSearch:
    """Least-size member C with C -> (B)^A_k, every smaller candidate carrying
    a bad coloring.  Non-rigid A is refuted by the Aut(A) coloring whenever
    |Aut(A)| <= k."""
    for X in (A, B):
        if spec.membership(X) is not None:
            raise ValueError(f"{X} is not a member of {spec.name}")
    use_rigidity = (
        not is_rigid(A) and len(automorphisms(A)) <= k and bool(embeddings(A, B))
    )
    failures: list[BadColoring] = []
    for C in enumerate_members(spec, size_bound):
        if use_rigidity and embeddings(A, C):
            bad = rigidity_refutation(A, C, B)
            failures.append(bad)
            continue
        result = ramsey_check(A, B, k, C, symmetry=symmetry, cap=cap, jobs=jobs)
        if isinstance(result, RamseyCertificate):
            return WitnessSearch(C, result, failures, size_bound)
        failures.append(result)
    return WitnessSearch(None, None, failures, size_bound)


__all__ = [
    "BadColoring", "Coloring", "DEFAULT_CAP", "RamseyCertificate", "RigidityInapplicable",
    "SearchCapExceeded", "WitnessSearch", "decode", "ramsey_check",
    "ramsey_witness_search", "rigidity_refutation",
]
