"""Bounded checks of the class axioms, the limit chain, and back-and-forth."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .catalogs import (
    AmalgamationFailure,
    ClassSpec,
    amalgam,
    enumerate_members,
    joint_embed,
    members_of_size,
)
from .structures import (
    Embedding,
    PartialMap,
    Structure,
    canonical_key,
    first_embedding,
    induced_substructure,
    is_embedding,
    is_partial_isomorphism,
    iter_embeddings,
)


@dataclass
class Verdict:
    holds: bool
    counterexample: Optional[dict] = None
    checked: int = 0


@dataclass(frozen=True)
class AmalgamCertificate:
    A: Structure
    B: Structure
    C: Structure
    alpha: Embedding
    beta: Embedding
    D: Structure
    i: Embedding
    j: Embedding
    via: str  # "strategy" or "search"

    def verify(self) -> bool:
        return (
            is_embedding(self.A, self.B, self.alpha)
            and is_embedding(self.A, self.C, self.beta)
            and is_embedding(self.B, self.D, self.i)
            and is_embedding(self.C, self.D, self.j)
            and all(self.i[a] == self.j[b] for a, b in zip(self.alpha, self.beta))
        )


@dataclass
class ApReport:
    holds: bool
    counterexample: Optional[tuple] = None  # (A, B, C, alpha, beta)
    certificates: list[AmalgamCertificate] = field(default_factory=list)
    strategy_failures: int = 0


# -- class axioms -----------------------------------------------------------


def check_hereditary(spec: ClassSpec, max_size: int) -> Verdict:
    checked = 0
    for S in enumerate_members(spec, max_size):
        for k in range(S.size + 1):
            for subset in itertools.combinations(range(S.size), k):
                checked += 1
                sub = induced_substructure(S, subset)
                bad = spec.membership(sub)
                if bad is not None:
                    return Verdict(
                        False,
                        {"member": S, "subset": subset, "violation": str(bad)},
                        checked,
                    )
    return Verdict(True, None, checked)


def search_joint(spec: ClassSpec, A: Structure, B: Structure, bound: int):
    for n in range(max(A.size, B.size), bound + 1):
        for D in members_of_size(spec, n):
            i = first_embedding(A, D)
            if i is None:
                continue
            j = first_embedding(B, D)
            if j is not None:
                return D, i, j
    return None


def check_jep(spec: ClassSpec, max_size: int, search_bound: Optional[int] = None) -> Verdict:
    """Every pair of members of size <= max_size embeds into a common member
    (found by the class strategy, else by search up to ``search_bound``)."""
    bound = 2 * max_size if search_bound is None else search_bound
    members = enumerate_members(spec, max_size)
    checked = 0
    for a, A in enumerate(members):
        for B in members[a:]:
            checked += 1
            found = None
            if spec.jep_strategy is not None:
                try:
                    C, i, j = joint_embed(spec, A, B)
                    if C.size <= bound:
                        found = (C, i, j)
                except AmalgamationFailure:
                    pass
            if found is None:
                found = search_joint(spec, A, B, bound)
            if found is None:
                return Verdict(False, {"A": A, "B": B, "search_bound": bound}, checked)
    return Verdict(True, None, checked)


def search_amalgam(
    spec: ClassSpec,
    A: Structure,
    B: Structure,
    C: Structure,
    alpha: Sequence[int],
    beta: Sequence[int],
    bound: int,
):
    """Scan members D by size for i: B->D, j: C->D with i∘alpha = j∘beta."""
    for n in range(max(B.size, C.size), bound + 1):
        for D in members_of_size(spec, n):
            for i in iter_embeddings(B, D):
                pinned = {beta[a]: i[alpha[a]] for a in range(A.size)}
                j = first_embedding(C, D, pinned)
                if j is not None:
                    return D, i, j
    return None


def check_amalgamation(spec: ClassSpec, max_size: int, search_bound: int) -> ApReport:
    """Every (A, B, C, alpha, beta) with members of size <= max_size has an
    amalgam of size <= search_bound.

    The class strategy is tried first; when it fails or overshoots the bound
    the members up to the bound are searched exhaustively.
    """
    if search_bound < max_size:
        raise ValueError("search_bound must be >= max_size")
    members = enumerate_members(spec, max_size)
    emb_cache: dict[tuple[int, int], list[Embedding]] = {}

    def emb(a: int, b: int) -> list[Embedding]:
        if (a, b) not in emb_cache:
            emb_cache[(a, b)] = list(iter_embeddings(members[a], members[b]))
        return emb_cache[(a, b)]

    report = ApReport(True)
    idx = range(len(members))
    for a in idx:
        A = members[a]
        over = [b for b in idx if members[b].size >= A.size and emb(a, b)]
        for b, c in itertools.product(over, over):
            B, C = members[b], members[c]
            for alpha in emb(a, b):
                for beta in emb(a, c):
                    cert = _amalgamate_one(spec, A, B, C, alpha, beta, search_bound, report)
                    if cert is None:
                        report.holds = False
                        report.counterexample = (A, B, C, alpha, beta)
                        return report
                    report.certificates.append(cert)
    return report


def _amalgamate_one(spec, A, B, C, alpha, beta, bound, report):
    try:
        D, i, j = amalgam(spec, A, B, C, alpha, beta)
        if D.size <= bound:
            return AmalgamCertificate(A, B, C, alpha, beta, D, i, j, "strategy")
    except AmalgamationFailure:
        report.strategy_failures += 1
    found = search_amalgam(spec, A, B, C, alpha, beta, bound)
    if found is None:
        return None
    D, i, j = found
    return AmalgamCertificate(A, B, C, alpha, beta, D, i, j, "search")


# -- extension property -----------------------------------------------------


def extension_property_check(M: Structure, spec: ClassSpec, a_max: int, b_max: int) -> Verdict:
    """For each induced A ⊆ M (|A| <= a_max), member B (|B| <= b_max) and
    alpha: A->B, look for phi: B->M with phi∘alpha the inclusion of A."""
    if a_max > b_max:
        raise ValueError("a_max must be <= b_max")
    members = enumerate_members(spec, b_max)
    checked = 0
    for k in range(min(a_max, M.size) + 1):
        for subset in itertools.combinations(range(M.size), k):
            A = induced_substructure(M, subset)
            for B in members:
                for alpha in iter_embeddings(A, B):
                    checked += 1
                    pinned = {alpha[x]: subset[x] for x in range(k)}
                    if first_embedding(B, M, pinned) is None:
                        return Verdict(
                            False, {"A": subset, "B": B, "alpha": alpha}, checked
                        )
    return Verdict(True, None, checked)


# -- the limit chain --------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    A: Structure
    B: Structure
    alpha: Embedding  # A -> B, a one-point extension
    f: Embedding  # A -> current
    realized: bool
    witness: Optional[Embedding]  # B -> current with witness∘alpha = f


@dataclass
class ChainState:
    current: Structure
    ledger: list[LedgerEntry]
    budget: int
    rounds: int = 0

    def verify(self) -> bool:
        for e in self.ledger:
            if not e.realized:
                continue
            if not is_embedding(e.B, self.current, e.witness):
                return False
            if any(e.witness[e.alpha[x]] != e.f[x] for x in range(e.A.size)):
                return False
        return True


class ChainFailure(Exception):
    def __init__(self, entry: tuple, cause: AmalgamationFailure):
        super().__init__(f"amalgamation failed on quadruple {entry}: {cause.reason}")
        self.entry = entry
        self.cause = cause


def _extension_pairs(spec: ClassSpec, max_b: int) -> list[tuple[Structure, Structure, Embedding]]:
    pairs = []
    for n in range(1, max_b + 1):
        for B in members_of_size(spec, n):
            for A in members_of_size(spec, n - 1):
                for alpha in iter_embeddings(A, B):
                    pairs.append((A, B, alpha))
    pairs.sort(key=lambda p: (p[1].size, canonical_key(p[1]), canonical_key(p[0]), p[2]))
    return pairs


def _as_prefix(D: Structure, i: Sequence[int], j: Sequence[int]):
    """Relabel D so that i becomes the identity on an initial segment."""
    perm = [-1] * D.size
    for x, y in enumerate(i):
        perm[y] = x
    nxt = len(i)
    for y in range(D.size):
        if perm[y] < 0:
            perm[y] = nxt
            nxt += 1
    return D.relabel(perm), tuple(perm[y] for y in j)


def fraisse_chain(spec: ClassSpec, budget: int) -> ChainState:
    """Grow a finite approximation of the limit.

    Round r processes the one-point extensions (A, B, alpha) with |B| <= r + 1
    against every f: A -> current, in the order (|B|, B, A, f, alpha).  Each
    unrealized task is realized by amalgamating current with B over A.  The
    chain stops at the first task whose realization would exceed ``budget``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    seed = None
    for n in range(1, budget + 1):
        level = members_of_size(spec, n)
        if level:
            seed = level[0]
            break
    if seed is None:
        raise ValueError(f"{spec.name} has no nonempty member within budget {budget}")
    state = ChainState(seed, [], budget)
    done: set = set()
    r = 0
    while True:
        r += 1
        grew = False
        snapshot = state.current
        tasks = []
        for A, B, alpha in _extension_pairs(spec, r + 1):
            for f in iter_embeddings(A, snapshot):
                tasks.append((B.size, canonical_key(B), canonical_key(A), f, alpha, A, B))
        tasks.sort(key=lambda t: t[:5])
        for *_, f, alpha, A, B in tasks:
            key = (A, B, alpha, f)
            if key in done:
                continue
            pinned = {alpha[x]: f[x] for x in range(A.size)}
            witness = first_embedding(B, state.current, pinned)
            if witness is None:
                try:
                    D, i, j = amalgam(spec, A, state.current, B, f, alpha)
                except AmalgamationFailure as exc:
                    raise ChainFailure((A, B, alpha, f), exc) from exc
                if D.size > budget:
                    state.ledger.append(LedgerEntry(A, B, alpha, f, False, None))
                    state.rounds = r
                    return state
                state.current, witness = _as_prefix(D, i, j)
                grew = True
            done.add(key)
            state.ledger.append(LedgerEntry(A, B, alpha, f, True, witness))
        state.rounds = r
        if not grew and r + 1 > budget:
            return state


# -- back and forth ---------------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    direction: str  # "forth" or "back"
    frontier: PartialMap
    element: int


class _Extender:
    def __init__(self, X: Structure):
        self.touching: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(X.size)]
        for r, table in enumerate(X.tables):
            for t in table:
                for v in set(t):
                    self.touching[v].append((r, t))
        self.X = X

    def ok(self, x: int, fwd: dict[int, int], other: Structure) -> bool:
        for r, t in self.touching[x]:
            if all(v in fwd for v in t):
                if tuple(fwd[v] for v in t) not in other.tables[r]:
                    return False
        return True


def back_and_forth(
    M: Structure,
    N: Structure,
    seed: Sequence[tuple[int, int]] = (),
    backtrack: bool = True,
) -> Embedding | Obstruction:
    """Alternately map the least unmapped point of M (forth) and of N (back)
    to the least legal partner.

    With ``backtrack`` the choices are revisited on a dead end, which makes
    the procedure complete on finite structures; the first dead end met is
    reported when no isomorphism exists.
    """
    if M.signature != N.signature:
        raise ValueError("signature mismatch")
    seed = sorted(seed)
    if not is_partial_isomorphism(M, N, seed):
        raise ValueError(f"seed {seed} is not a partial isomorphism")
    fwd = dict(seed)
    bwd = {y: x for x, y in seed}
    ext_m, ext_n = _Extender(M), _Extender(N)
    first: list[Obstruction] = []

    def legal(x: int, y: int) -> bool:
        fwd[x] = y
        bwd[y] = x
        good = ext_m.ok(x, fwd, N) and ext_n.ok(y, bwd, M)
        del fwd[x]
        del bwd[y]
        return good

    def step(parity: int) -> bool:
        todo_m = [x for x in range(M.size) if x not in fwd]
        todo_n = [y for y in range(N.size) if y not in bwd]
        if not todo_m and not todo_n:
            return True
        forth = (parity == 0 and todo_m) or not todo_n
        if forth:
            x = todo_m[0]
            options = [y for y in todo_n if legal(x, y)]
        else:
            y0 = todo_n[0]
            options = [x for x in todo_m if legal(x, y0)]
        if not options:
            if not first:
                first.append(
                    Obstruction(
                        "forth" if forth else "back",
                        tuple(sorted(fwd.items())),
                        todo_m[0] if forth else todo_n[0],
                    )
                )
            return False
        for o in options:
            x, y = (todo_m[0], o) if forth else (o, todo_n[0])
            fwd[x], bwd[y] = y, x
            if step(1 - parity):
                return True
            del fwd[x]
            del bwd[y]
            if not backtrack:
                break
        return False

    if step(0):
        return tuple(fwd[x] for x in range(M.size))
    return first[0]


def iter_partial_isomorphisms(M: Structure, N: Structure) -> Iterator[PartialMap]:
    for k in range(min(M.size, N.size) + 1):
        for dom in itertools.combinations(range(M.size), k):
            for img in itertools.permutations(range(N.size), k):
                pairs = tuple(zip(dom, img))
                if is_partial_isomorphism(M, N, pairs):
                    yield pairs
