"""File formats shared by the command line.

Structure files are UTF-8 JSON with keys ``signature`` (list of
``{"name", "arity"}``), ``size`` and ``relations`` (name -> list of tuples),
written with sorted keys so digests are stable.  Tree files hold one node
per line as a JSON array (``[]`` is the root); pair-tree lines are
``[[a...], [s...]]``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Iterable

from .structures import Signature, Structure
from .trees import FinTree, PairTree, Node


def structure_to_obj(S: Structure) -> dict:
    return {
        "signature": [{"name": n, "arity": a} for n, a in S.signature.relations],
        "size": S.size,
        "relations": S.as_dict(),
    }


def structure_from_obj(obj: dict) -> Structure:
    try:
        sig = Signature.of(*((r["name"], r["arity"]) for r in obj["signature"]))
        return Structure.build(sig, int(obj["size"]), obj.get("relations", {}))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed structure document: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_structure(S: Structure) -> str:
    return dumps(structure_to_obj(S))


def load_structure(path: str | Path) -> Structure:
    return structure_from_obj(json.loads(Path(path).read_text(encoding="utf-8")))


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def _node_lines(text: str) -> Iterable[Any]:
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield json.loads(line)


def parse_tree(text: str) -> FinTree:
    return FinTree.of(_node_lines(text))


def parse_pair_tree(text: str) -> PairTree:
    return PairTree.of((a, s) for a, s in _node_lines(text))


def _shortlex(s: Node):
    return (len(s), s)


def dump_tree(T: FinTree) -> str:
    return "".join(json.dumps(list(s)) + "\n" for s in sorted(T.nodes, key=_shortlex))


def dump_pair_tree(P: PairTree) -> str:
    pairs = sorted(P.nodes, key=lambda p: (len(p[0]), p))
    return "".join(json.dumps([list(a), list(s)]) + "\n" for a, s in pairs)
