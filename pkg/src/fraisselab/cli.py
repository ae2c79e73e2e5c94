"""Command-line front end.

Every command prints a certificate document (sorted-key JSON) to stdout or
``--out``.  Exit codes: 0 the property holds / the operation succeeded,
1 the property fails and a counterexample is included, 2 usage or format
error, 3 search cap exceeded.

Structures are given as file paths or built-in names: ``chain:N``,
``complete:N``, ``path:N``, ``cycle:N``, ``empty:N``, ``bitgraph:N``,
``transitive:N`` (transitive tournament) and ``point``.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import catalogs, eppa, fraisse, g0, ramsey, random_graph, structures, trees
from .formats import (
    digest,
    dump_structure,
    dump_tree,
    dumps,
    load_structure,
    parse_pair_tree,
    parse_tree,
    structure_to_obj,
)
from .structures import Structure

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

# flags that never influence the document body
_NEUTRAL_FLAGS = {"--jobs": True, "--out": True, "--timing": False, "--dot": True}


class UsageError(Exception):
    pass


class Run:
    """Collects inputs and renders the certificate document."""

    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.args = args
        self.argv = list(argv)
        self.inputs: dict[str, str] = {}
        self.started = time.perf_counter()

    def structure(self, label: str, ref: str) -> Structure:
        S = _builtin(ref)
        if S is None:
            path = Path(ref)
            if not path.exists():
                raise UsageError(f"{label}: no file or built-in structure named {ref!r}")
            try:
                S = load_structure(path)
            except ValueError as exc:
                raise UsageError(f"{label}: {exc}") from exc
        self.inputs[label] = digest(dump_structure(S))
        return S

    def text(self, label: str, ref: str) -> str:
        path = Path(ref)
        if not path.exists():
            raise UsageError(f"{label}: no such file {ref!r}")
        body = path.read_text(encoding="utf-8")
        self.inputs[label] = digest(body)
        return body

    def command_echo(self) -> list[str]:
        out, skip = [], 0
        for tok in self.argv:
            if skip:
                skip -= 1
                continue
            flag = tok.split("=", 1)[0]
            if flag in _NEUTRAL_FLAGS:
                skip = 1 if _NEUTRAL_FLAGS[flag] and "=" not in tok else 0
                continue
            out.append(tok)
        return out

    def emit(self, verdict: str, result: dict, config: Optional[dict] = None) -> str:
        doc = {
            "command": self.command_echo(),
            "inputs": self.inputs,
            "verdict": verdict,
            "result": result,
            "config": config or {},
        }
        if self.args.timing:
            doc["timing_seconds"] = round(time.perf_counter() - self.started, 6)
        text = dumps(doc)
        if self.args.out:
            Path(self.args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return text


def _builtin(ref: str) -> Optional[Structure]:
    if ref == "point":
        return catalogs.graph(1)
    if ":" not in ref:
        return None
    kind, _, num = ref.partition(":")
    makers = {
        "chain": catalogs.chain,
        "complete": catalogs.complete_graph,
        "path": catalogs.path_graph,
        "cycle": catalogs.cycle_graph,
        "empty": catalogs.graph,
        "bitgraph": random_graph.bit_graph,
        "transitive": lambda n: catalogs.tournament(
            n, [(i, j) for i in range(n) for j in range(i + 1, n)]
        ),
    }
    if kind not in makers:
        return None
    try:
        n = int(num)
    except ValueError:
        raise UsageError(f"bad size in {ref!r}") from None
    return makers[kind](n)


def _ints(text: Optional[str]) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _pairs(text: Optional[str]) -> list[tuple[int, int]]:
    if not text:
        return []
    out = []
    for item in text.split(","):
        x, sep, y = item.partition(":")
        if not sep:
            raise UsageError(f"expected x:y pairs, got {item!r}")
        out.append((int(x), int(y)))
    return out


def _seed_range(text: str) -> range:
    lo, sep, hi = text.partition("-")
    if not sep:
        return range(int(lo), int(lo) + 1)
    return range(int(lo), int(hi) + 1)


def _spec(args) -> catalogs.ClassSpec:
    distances = None
    if getattr(args, "distances", None):
        distances = [Fraction(x) for x in args.distances.split(",")]
    try:
        return catalogs.get_class(args.cls, distances)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _sobj(S: Structure) -> dict:
    return structure_to_obj(S)


def _by_size(spec, ref: Optional[str], size: Optional[int], run: Run, label: str) -> Structure:
    if ref is not None:
        return run.structure(label, ref)
    if size is None:
        raise UsageError(f"give --{label} or --{label}-size")
    level = catalogs.members_of_size(spec, size)
    if len(level) != 1:
        raise UsageError(
            f"{spec.name} has {len(level)} members of size {size}; pass --{label} explicitly"
        )
    run.inputs[label] = digest(dump_structure(level[0]))
    return level[0]


# -- struct -----------------------------------------------------------------


def cmd_struct(args, run: Run) -> int:
    if args.action == "emb":
        A, B = run.structure("A", args.A), run.structure("B", args.B)
        embs = structures.embeddings(A, B)
        run.emit("found" if embs else "none", {"count": len(embs), "embeddings": embs})
        return EXIT_OK if embs else EXIT_FAIL
    if args.action == "iso":
        A, B = run.structure("A", args.A), run.structure("B", args.B)
        iso = structures.find_isomorphism(A, B)
        bnf = fraisse.back_and_forth(A, B)
        run.emit(
            "isomorphic" if iso is not None else "not-isomorphic",
            {"isomorphism": iso, "back_and_forth_agrees": isinstance(bnf, tuple) == (iso is not None)},
        )
        return EXIT_OK if iso is not None else EXIT_FAIL
    if args.action == "aut":
        A = run.structure("A", args.A)
        auts = structures.automorphisms(A)
        run.emit("rigid" if len(auts) == 1 else "not-rigid", {"count": len(auts), "automorphisms": auts})
        return EXIT_OK
    if args.action == "induce":
        A = run.structure("A", args.A)
        try:
            sub = structures.induced_substructure(A, _ints(args.subset))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        run.emit("ok", {"structure": _sobj(sub)})
        return EXIT_OK
    if args.action == "canon":
        A = run.structure("A", args.A)
        run.emit("ok", {"structure": _sobj(structures.canonical_form(A)),
                        "labeling": structures.canonical_labeling(A)})
        return EXIT_OK
    raise UsageError(args.action)


# -- class ------------------------------------------------------------------


def cmd_class(args, run: Run) -> int:
    spec = _spec(args)
    cfg = {"class": spec.name}
    if args.action == "enum":
        members = catalogs.enumerate_members(spec, args.max_size)
        counts: dict[str, int] = {}
        for S in members:
            counts[str(S.size)] = counts.get(str(S.size), 0) + 1
        run.emit("ok", {"count": len(members), "by_size": counts,
                        "members": [_sobj(S) for S in members]}, cfg)
        return EXIT_OK
    if args.action == "member":
        A = run.structure("A", args.A)
        try:
            bad = catalogs.is_member(spec, A)
        except structures.SignatureMismatch as exc:
            raise UsageError(str(exc)) from exc
        run.emit("member" if bad is None else "violation",
                 {"violation": None if bad is None else {"axiom": bad.axiom, "witness": bad.witness}}, cfg)
        return EXIT_OK if bad is None else EXIT_FAIL
    if args.action == "check-hp":
        v = fraisse.check_hereditary(spec, args.max_size)
        return _emit_verdict(run, v, cfg | {"max_size": args.max_size})
    if args.action == "check-jep":
        v = fraisse.check_jep(spec, args.max_size, args.search_bound)
        return _emit_verdict(run, v, cfg | {"max_size": args.max_size, "search_bound": args.search_bound})
    if args.action == "check-ap":
        bound = args.search_bound if args.search_bound is not None else 2 * args.max_size
        try:
            rep = fraisse.check_amalgamation(spec, args.max_size, bound)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        result: dict[str, Any] = {
            "certificates": len(rep.certificates),
            "via_search": sum(c.via == "search" for c in rep.certificates),
            "strategy_failures": rep.strategy_failures,
            "certificate_digest": digest(dumps([
                [c.alpha, c.beta, c.i, c.j, _sobj(c.D)] for c in rep.certificates
            ])),
        }
        if rep.counterexample is not None:
            A, B, C, alpha, beta = rep.counterexample
            result["counterexample"] = {"A": _sobj(A), "B": _sobj(B), "C": _sobj(C),
                                        "alpha": alpha, "beta": beta}
        run.emit("holds" if rep.holds else "fails", result,
                 cfg | {"max_size": args.max_size, "search_bound": bound})
        return EXIT_OK if rep.holds else EXIT_FAIL
    if args.action == "amalgam":
        A, B, C = run.structure("A", args.A), run.structure("B", args.B), run.structure("C", args.C)
        try:
            D, i, j = catalogs.amalgam(spec, A, B, C, _ints(args.alpha), _ints(args.beta))
        except catalogs.AmalgamationFailure as exc:
            run.emit("fails", {"reason": exc.reason, "certificate": _plain(exc.certificate)}, cfg)
            return EXIT_FAIL
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        run.emit("ok", {"D": _sobj(D), "i": i, "j": j}, cfg)
        return EXIT_OK
    raise UsageError(args.action)


def _plain(obj):
    if isinstance(obj, Structure):
        return _sobj(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _emit_verdict(run: Run, v: fraisse.Verdict, cfg: dict) -> int:
    run.emit("holds" if v.holds else "fails",
             {"checked": v.checked, "counterexample": _plain(v.counterexample)}, cfg)
    return EXIT_OK if v.holds else EXIT_FAIL


# -- fraisse ----------------------------------------------------------------


def cmd_fraisse(args, run: Run) -> int:
    if args.action == "build":
        spec = _spec(args)
        try:
            state = fraisse.fraisse_chain(spec, args.budget)
        except fraisse.ChainFailure as exc:
            A, B, alpha, f = exc.entry
            run.emit("fails", {"reason": exc.cause.reason, "quadruple": {
                "A": _sobj(A), "B": _sobj(B), "alpha": alpha, "f": f}}, {"class": spec.name})
            return EXIT_FAIL
        ledger = [
            {"A": _sobj(e.A), "B": _sobj(e.B), "alpha": e.alpha, "f": e.f,
             "realized": e.realized, "witness": e.witness}
            for e in state.ledger
        ]
        run.emit("ok", {"current": _sobj(state.current), "rounds": state.rounds,
                        "realized": sum(e.realized for e in state.ledger), "ledger": ledger,
                        "verified": state.verify()},
                 {"class": spec.name, "budget": args.budget})
        return EXIT_OK
    if args.action == "extcheck":
        spec = _spec(args)
        M = run.structure("M", args.M)
        v = fraisse.extension_property_check(M, spec, args.a_max, args.b_max)
        return _emit_verdict(run, v, {"class": spec.name, "a_max": args.a_max, "b_max": args.b_max})
    if args.action == "bnf":
        M, N = run.structure("M", args.M), run.structure("N", args.N)
        try:
            out = fraisse.back_and_forth(M, N, _pairs(args.seed), backtrack=not args.greedy)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if isinstance(out, fraisse.Obstruction):
            run.emit("obstruction", {"direction": out.direction, "frontier": out.frontier,
                                     "element": out.element})
            return EXIT_FAIL
        run.emit("isomorphism", {"map": out})
        return EXIT_OK
    raise UsageError(args.action)


# -- ramsey -----------------------------------------------------------------


def _bad_obj(bad: ramsey.BadColoring) -> dict:
    return {
        "C": _sobj(bad.C),
        "method": bad.method,
        "colors": bad.coloring.colors,
        "k": bad.coloring.k,
        "domain": bad.coloring.domain,
        "refutation": [list(r) for r in bad.refutation],
        "verified": bad.verify(),
    }


def _cert_obj(cert: ramsey.RamseyCertificate) -> dict:
    pairs = list(zip(cert.coloring_indices.tolist(), cert.witnesses.tolist()))
    obj = {
        "C": _sobj(cert.C),
        "k": cert.k,
        "colorings_checked": len(pairs),
        "symmetry_reduced": cert.symmetry_reduced,
        "emb_bc": cert.emb_bc,
        "witness_digest": digest(dumps(pairs)),
        "verified": cert.verify(),
    }
    if len(pairs) <= 1 << 16:
        obj["witness_map"] = pairs
    return obj


def _k(args) -> int:
    return 2 if args.two_colors else args.k


def cmd_ramsey(args, run: Run) -> int:
    symmetry = not getattr(args, "no_symmetry", False)
    if args.action == "check":
        A, B, C = run.structure("A", args.A), run.structure("B", args.B), run.structure("C", args.C)
        k = _k(args)
        out = ramsey.ramsey_check(A, B, k, C, symmetry=symmetry, cap=args.cap, jobs=args.jobs)
        cfg = {"k": k, "symmetry": symmetry, "cap": args.cap}
        if isinstance(out, ramsey.BadColoring):
            run.emit("bad-coloring", _bad_obj(out), cfg)
            return EXIT_FAIL
        run.emit("certificate", _cert_obj(out), cfg)
        return EXIT_OK
    if args.action == "search":
        spec = _spec(args)
        A = _by_size(spec, args.A, args.a_size, run, "a")
        B = _by_size(spec, args.B, args.b_size, run, "b")
        k = _k(args)
        res = ramsey.ramsey_witness_search(spec, A, B, k, args.bound, symmetry=symmetry,
                                           cap=args.cap, jobs=args.jobs)
        result = {
            "minimal_size": None if res.exhausted else res.witness.size,
            "summary": [[n, v] for n, v in res.summary()],
            "failures": [_bad_obj(b) for b in res.failures],
        }
        if res.certificate is not None:
            result["certificate"] = _cert_obj(res.certificate)
        cfg = {"class": spec.name, "k": k, "bound": args.bound, "symmetry": symmetry, "cap": args.cap}
        run.emit("exhausted" if res.exhausted else "witness", result, cfg)
        return EXIT_FAIL if res.exhausted else EXIT_OK
    if args.action == "rigidity":
        A, C = run.structure("A", args.A), run.structure("C", args.C)
        B = run.structure("B", args.B) if args.B else None
        try:
            bad = ramsey.rigidity_refutation(A, C, B)
        except ramsey.RigidityInapplicable as exc:
            raise UsageError(str(exc)) from exc
        run.emit("bad-coloring", _bad_obj(bad))
        return EXIT_OK
    raise UsageError(args.action)


# -- eppa -------------------------------------------------------------------


def _eppa_cert(cert: eppa.EppaCertificate) -> dict:
    return {
        "B": _sobj(cert.B),
        "embedding": cert.embedding,
        "extensions": [[list(map(list, p)), g] for p, g in cert.extensions.items()],
        "verified": cert.verify(),
    }


def cmd_eppa(args, run: Run) -> int:
    if args.action == "enum":
        A = run.structure("A", args.A)
        parts = eppa.partial_automorphisms(A)
        run.emit("ok", {"count": len(parts), "partial_automorphisms": parts})
        return EXIT_OK
    if args.action == "check":
        A, B = run.structure("A", args.A), run.structure("B", args.B)
        out = eppa.eppa_check(A, B, args.cap)
        if isinstance(out, eppa.EppaFailure):
            run.emit("fails", {"obstructions": [[e, p] for e, p in out.obstructions]})
            return EXIT_FAIL
        run.emit("certificate", _eppa_cert(out))
        return EXIT_OK
    if args.action == "search":
        spec = _spec(args)
        A = run.structure("A", args.A)
        res = eppa.eppa_witness_search(spec, A, args.bound, args.cap)
        result: dict[str, Any] = {
            "minimal_size": None if res.exhausted else res.witness.size,
            "rejected": [
                {"B": _sobj(f.B), "obstructions": [[e, p] for e, p in f.obstructions]}
                for f in res.rejected
            ],
        }
        if res.certificate is not None:
            result["certificate"] = _eppa_cert(res.certificate)
        run.emit("exhausted" if res.exhausted else "witness", result,
                 {"class": spec.name, "bound": args.bound})
        return EXIT_FAIL if res.exhausted else EXIT_OK
    raise UsageError(args.action)


# -- rado -------------------------------------------------------------------


def cmd_rado(args, run: Run) -> int:
    if args.action == "sample":
        s = random_graph.sample_gnp(args.n, Fraction(args.p), args.seed)
        if args.dot:
            Path(args.dot).write_text(random_graph.to_dot(s.graph), encoding="utf-8")
        run.emit("ok", {"graph": _sobj(s.graph), "edges": len(catalogs.edges_of(s.graph))},
                 {"n": args.n, "p": str(s.p), "seed": args.seed})
        return EXIT_OK
    if args.action == "extend":
        G = run.structure("G", args.G)
        try:
            w = random_graph.extension_witness(G, _ints(args.a), _ints(args.b))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        run.emit("found" if w is not None else "none", {"witness": w})
        return EXIT_OK if w is not None else EXIT_FAIL
    if args.action == "level":
        G = run.structure("G", args.G)
        bad = random_graph.extension_property_level(G, args.a_max, args.b_max)
        run.emit("holds" if not bad else "fails", {"failing": bad[:1000], "failing_count": len(bad)},
                 {"a_max": args.a_max, "b_max": args.b_max})
        return EXIT_OK if not bad else EXIT_FAIL
    if args.action == "bitgraph":
        G = random_graph.bit_graph(args.n)
        if args.dot:
            Path(args.dot).write_text(random_graph.to_dot(G), encoding="utf-8")
        result: dict[str, Any] = {"graph": _sobj(G)}
        verdict, code = "ok", EXIT_OK
        if args.level:
            a, b = _ints(args.level)
            bad = random_graph.extension_property_level(G, a, b)
            result["level"] = {"a_max": a, "b_max": b, "failing_count": len(bad), "failing": bad[:1000]}
            verdict, code = ("holds", EXIT_OK) if not bad else ("fails", EXIT_FAIL)
        run.emit(verdict, result, {"n": args.n})
        return code
    if args.action == "rate":
        rep = random_graph.pass_rate(args.n, Fraction(args.p), _seed_range(args.seeds),
                                     args.a_max, args.b_max)
        ok = rep["passed"] >= args.threshold * rep["samples"]
        run.emit("holds" if ok else "fails", rep, {"threshold": args.threshold})
        return EXIT_OK if ok else EXIT_FAIL
    raise UsageError(args.action)


# -- tree -------------------------------------------------------------------


def _tree(run: Run, ref: str) -> trees.FinTree:
    try:
        return parse_tree(run.text("tree", ref))
    except ValueError as exc:
        raise UsageError(f"tree: {exc}") from exc


def cmd_tree(args, run: Run) -> int:
    if args.action == "kb":
        order = trees.kb_compare(_ints(args.s), _ints(args.t))
        run.emit(order.name.lower(), {"s": _ints(args.s), "t": _ints(args.t), "order": order.name})
        return EXIT_OK
    if args.action == "sort":
        T = _tree(run, args.input)
        run.emit("ok", {"order": [list(s) for s in trees.kb_sort(T)]})
        return EXIT_OK
    if args.action == "rank":
        T = _tree(run, args.input)
        try:
            r = trees.rank(T)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        result: dict[str, Any] = {"rank": r}
        if args.pruned_depth is not None:
            result["pruned_to_depth"] = trees.is_pruned_up_to(T, args.pruned_depth)
        run.emit("ok", result)
        return EXIT_OK
    if args.action == "section":
        try:
            P = parse_pair_tree(run.text("pair_tree", args.input))
        except ValueError as exc:
            raise UsageError(f"pair tree: {exc}") from exc
        S = trees.section_tree(P, _ints(args.a))
        run.emit("ok", {"tree": dump_tree(S).splitlines()})
        return EXIT_OK
    raise UsageError(args.action)


# -- g0 ---------------------------------------------------------------------


def cmd_g0(args, run: Run) -> int:
    if args.action == "gen-s":
        S = g0.canonical_sparse_dense(args.depth)
        run.emit("ok", {"levels": list(S.levels), "dense_up_to": S.dense_up_to()}, {"depth": args.depth})
        return EXIT_OK
    S = g0.canonical_sparse_dense(max(args.n - 1, 0))
    cfg = {"n": args.n, "S": "canonical"}
    if args.action == "build":
        L = g0.g0_level(S, args.n)
        if args.dot:
            Path(args.dot).write_text(g0.to_dot(L), encoding="utf-8")
        run.emit("ok", {"vertices": len(L.vertices), "edges": [list(e) for e in sorted(L.edges)]}, cfg)
        return EXIT_OK
    if args.action == "direct":
        E = g0.g0_edges_direct(S, args.n)
        run.emit("ok", {"edges": [list(e) for e in sorted(E)]}, cfg)
        return EXIT_OK
    if args.action == "color":
        L = g0.g0_level(S, args.n)
        col = g0.greedy_color(L, list(L.vertices))
        bound = g0.max_degree(L) + 1
        used = len(set(col.values()))
        ok = g0.is_proper(L, col) and used <= bound
        run.emit("holds" if ok else "fails",
                 {"colors_used": used, "max_degree_plus_one": bound, "proper": g0.is_proper(L, col),
                  "coloring": {v: c for v, c in sorted(col.items())}}, cfg)
        return EXIT_OK if ok else EXIT_FAIL
    if args.action == "validate":
        L = g0.g0_level(S, args.n)
        summary = g0.level_summary(L)
        ok = (summary["vertices"] == 2**args.n and summary["edges"] == 2**args.n - 1
              and summary["components"] == 1 and summary["acyclic"] and summary["matches_direct"])
        run.emit("holds" if ok else "fails", summary, cfg)
        return EXIT_OK if ok else EXIT_FAIL
    raise UsageError(args.action)


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--out", help="write the document here instead of stdout")
    common.add_argument("--timing", action="store_true", help="add elapsed seconds to the document")

    def cls_flags(p):
        p.add_argument("--class", dest="cls", required=True,
                       help="graphs, linear-orders, tournaments or qmetric")
        p.add_argument("--distances", help="qmetric distance set, e.g. 1,2,3 or 1/2,1")

    parser = argparse.ArgumentParser(prog="fraisselab", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    def group(name, actions):
        g = top.add_parser(name)
        sub = g.add_subparsers(dest="action", required=True)
        return {a: sub.add_parser(a, parents=[common]) for a in actions}

    p = group("struct", ["emb", "iso", "aut", "induce", "canon"])
    for a in ("emb", "iso"):
        p[a].add_argument("A")
        p[a].add_argument("B")
    for a in ("aut", "induce", "canon"):
        p[a].add_argument("A")
    p["induce"].add_argument("--subset", default="")

    p = group("class", ["enum", "member", "check-hp", "check-jep", "check-ap", "amalgam"])
    for q in p.values():
        cls_flags(q)
    for a in ("enum", "check-hp", "check-jep", "check-ap"):
        p[a].add_argument("--max-size", type=int, required=True)
    for a in ("check-jep", "check-ap"):
        p[a].add_argument("--search-bound", type=int)
    p["member"].add_argument("A")
    for name in ("A", "B", "C"):
        p["amalgam"].add_argument(f"--{name.lower()}", dest=name, required=True)
    p["amalgam"].add_argument("--alpha", default="")
    p["amalgam"].add_argument("--beta", default="")

    p = group("fraisse", ["build", "extcheck", "bnf"])
    cls_flags(p["build"])
    p["build"].add_argument("--budget", type=int, required=True)
    cls_flags(p["extcheck"])
    p["extcheck"].add_argument("M")
    p["extcheck"].add_argument("--a-max", type=int, required=True)
    p["extcheck"].add_argument("--b-max", type=int, required=True)
    p["bnf"].add_argument("M")
    p["bnf"].add_argument("N")
    p["bnf"].add_argument("--seed", help="partial map as x:y,x:y")
    p["bnf"].add_argument("--greedy", action="store_true", help="no backtracking")

    p = group("ramsey", ["check", "search", "rigidity"])
    for q in (p["check"], p["search"]):
        q.add_argument("-k", type=int, default=2)
        q.add_argument("--two-colors", action="store_true",
                       help="restrict to 2-colorings (enough to decide the Ramsey property)")
        q.add_argument("--no-symmetry", action="store_true")
        q.add_argument("--cap", type=int, default=ramsey.DEFAULT_CAP)
    for name in ("A", "B", "C"):
        p["check"].add_argument(f"--{name.lower()}", dest=name, required=True)
    cls_flags(p["search"])
    p["search"].add_argument("--a", dest="A")
    p["search"].add_argument("--b", dest="B")
    p["search"].add_argument("--a-size", type=int)
    p["search"].add_argument("--b-size", type=int)
    p["search"].add_argument("--bound", type=int, required=True)
    p["rigidity"].add_argument("--a", dest="A", required=True)
    p["rigidity"].add_argument("--c", dest="C", required=True)
    p["rigidity"].add_argument("--b", dest="B")

    p = group("eppa", ["enum", "check", "search"])
    p["enum"].add_argument("--a", dest="A", required=True)
    p["check"].add_argument("--a", dest="A", required=True)
    p["check"].add_argument("--b", dest="B", required=True)
    cls_flags(p["search"])
    p["search"].add_argument("--a", dest="A", required=True)
    p["search"].add_argument("--bound", type=int, required=True)
    for a in ("check", "search"):
        p[a].add_argument("--cap", type=int)

    p = group("rado", ["sample", "extend", "level", "bitgraph", "rate"])
    for a in ("sample", "rate"):
        p[a].add_argument("-n", type=int, required=True)
        p[a].add_argument("-p", default="1/2")
    p["sample"].add_argument("--seed", type=int, default=0)
    p["sample"].add_argument("--dot")
    p["extend"].add_argument("G")
    p["extend"].add_argument("--a", default="")
    p["extend"].add_argument("--b", default="")
    p["level"].add_argument("G")
    for a in ("level", "rate"):
        p[a].add_argument("--a-max", type=int, default=1)
        p[a].add_argument("--b-max", type=int, default=1)
    p["rate"].add_argument("--seeds", default="0-99")
    p["rate"].add_argument("--threshold", type=float, default=0.95)
    p["bitgraph"].add_argument("-n", type=int, required=True)
    p["bitgraph"].add_argument("--level", help="a_max,b_max")
    p["bitgraph"].add_argument("--dot")

    p = group("tree", ["kb", "sort", "rank", "section"])
    p["kb"].add_argument("--s", default="")
    p["kb"].add_argument("--t", default="")
    for a in ("sort", "rank", "section"):
        p[a].add_argument("--input", required=True)
    p["rank"].add_argument("--pruned-depth", type=int)
    p["section"].add_argument("--a", default="")

    p = group("g0", ["gen-s", "build", "direct", "color", "validate"])
    p["gen-s"].add_argument("--depth", type=int, required=True)
    for a in ("build", "direct", "color", "validate"):
        p[a].add_argument("-n", type=int, required=True)
    p["build"].add_argument("--dot")
    return parser


HANDLERS = {
    "struct": cmd_struct, "class": cmd_class, "fraisse": cmd_fraisse, "ramsey": cmd_ramsey,
    "eppa": cmd_eppa, "rado": cmd_rado, "tree": cmd_tree, "g0": cmd_g0,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    run = Run(args, argv)
    try:
        return HANDLERS[args.group](args, run)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ramsey.SearchCapExceeded as exc:
        run.emit("cap-exceeded", {"reason": str(exc)})
        return EXIT_CAP
    except (structures.SignatureMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
