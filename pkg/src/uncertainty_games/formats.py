"""JSON object and proof files.

Object file::

    {"kind": "dice" | "joint" | "channel" | "game",
     "data": [...],                 # vector or list of rows
     "conventions": {...}}          # optional row/column tags

Numbers may be strings (``"2/3"``, ``"0.25"``) or JSON numbers; both are
read exactly.  Default conventions are ``rows=x, columns=y`` for a joint
distribution and ``rows=output, columns=input`` for channels and game
matrices (``rows=w, columns=z``); giving the swapped tags transposes.

Proof file::

    {"kind": "witness" | "distinguishing-game",
     "relation": "conditional" | "channel",
     "payload": {...}, "verified": true}
"""

from __future__ import annotations

import json
from decimal import Decimal
from pathlib import Path

from .channel import ChannelMatrix, ChanWitness, DistinguishingChanGame
from .conditional import CondWitness, DistinguishingCondGame, JointDistribution
from .errors import ParseError, UncertaintyGamesError
from .numerics import GameMatrix, Mat, ProbVector, SubDistribution

KINDS = ("dice", "joint", "channel", "game")

_DEFAULT_TAGS = {
    "joint": ("x", "y"),
    "channel": ("output", "input"),
    "game": ("w", "z"),
}


def read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _is_matrix(data) -> bool:
    return isinstance(data, list) and bool(data) and all(isinstance(r, list) for r in data)


def _orient(kind, data, conventions):
    default = _DEFAULT_TAGS[kind]
    if not conventions:
        return data
    if not isinstance(conventions, dict):
        raise ParseError("conventions must be an object")
    tags = (conventions.get("rows", default[0]), conventions.get("columns", default[1]))
    if tags == default:
        return data
    if tags == default[::-1]:
        return [list(c) for c in zip(*data)]
    raise ParseError(f"unsupported conventions {conventions!r} for kind {kind!r}; "
                     f"expected rows={default[0]!r}, columns={default[1]!r} or the swap")


def load_object(doc):
    """Typed object from a parsed object-file document."""
    if not isinstance(doc, dict):
        raise ParseError("object file must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if "data" not in doc:
        raise ParseError("missing 'data'")
    data = doc["data"]
    try:
        if kind == "dice":
            if not isinstance(data, list) or _is_matrix(data):
                raise ParseError("dice data must be a flat list")
            return ProbVector(data)
        if kind == "game" and not _is_matrix(data):
            if not isinstance(data, list):
                raise ParseError("game data must be a list or a list of rows")
            return SubDistribution(data)
        if not _is_matrix(data):
            raise ParseError(f"{kind} data must be a list of rows")
        data = _orient(kind, data, doc.get("conventions"))
        if kind == "joint":
            return JointDistribution(data)
        if kind == "channel":
            return ChannelMatrix(data)
        return GameMatrix(data)
    except ParseError:
        raise
    except UncertaintyGamesError as exc:
        raise ParseError(f"{kind}: {exc}") from exc


def parse_object(path):
    try:
        return load_object(read_json(path))
    except ParseError as exc:
        if str(path) in str(exc):
            raise
        raise ParseError(f"{path}: {exc}") from exc


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def _mat(m: Mat) -> list[list[str]]:
    return [_vec(r) for r in m]


def dump_object(obj) -> dict:
    """Inverse of :func:`load_object` with rationals as strings."""
    if isinstance(obj, ProbVector):
        return {"kind": "dice", "data": _vec(obj)}
    if isinstance(obj, SubDistribution):
        return {"kind": "game", "data": _vec(obj)}
    if isinstance(obj, JointDistribution):
        return {"kind": "joint", "data": _mat(obj.matrix),
                "conventions": {"rows": "x", "columns": "y"}}
    if isinstance(obj, ChannelMatrix):
        return {"kind": "channel", "data": _mat(obj.matrix),
                "conventions": {"rows": "output", "columns": "input"}}
    if isinstance(obj, GameMatrix):
        return {"kind": "game", "data": _mat(obj),
                "conventions": {"rows": "w", "columns": "z"}}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def dump_proof(proof, verified: bool = True) -> dict:
    if isinstance(proof, CondWitness):
        return {"kind": "witness", "relation": "conditional", "verified": verified,
                "payload": {"terms": [{"S": _mat(s), "V": list(v)} for s, v in proof.terms]}}
    if isinstance(proof, ChanWitness):
        return {"kind": "witness", "relation": "channel", "verified": verified,
                "payload": {"terms": [{"V": list(v), "S": _mat(s)} for v, s in proof.terms]}}
    if isinstance(proof, DistinguishingCondGame):
        return {"kind": "distinguishing-game", "relation": "conditional", "verified": verified,
                "payload": {"game": _mat(proof.game)}}
    if isinstance(proof, DistinguishingChanGame):
        return {"kind": "distinguishing-game", "relation": "channel", "verified": verified,
                "payload": {"game": _mat(proof.game)}}
    raise TypeError(f"cannot serialise {type(proof).__name__}")


def _perm(v):
    if not isinstance(v, list) or sorted(v) != list(range(len(v))):
        raise ParseError(f"{v!r} is not a permutation of 0..n-1")
    return tuple(int(i) for i in v)


def load_proof(doc):
    """Proof object from a parsed proof-file document."""
    if not isinstance(doc, dict):
        raise ParseError("proof file must be a JSON object")
    kind, relation = doc.get("kind"), doc.get("relation")
    payload = doc.get("payload")
    if relation not in ("conditional", "channel"):
        raise ParseError(f"unknown relation {relation!r}")
    if not isinstance(payload, dict):
        raise ParseError("missing payload")
    try:
        if kind == "witness":
            terms = payload.get("terms")
            if not isinstance(terms, list) or not terms:
                raise ParseError("witness needs a non-empty 'terms' list")
            if relation == "conditional":
                return CondWitness(tuple((Mat(t["S"]), _perm(t["V"])) for t in terms))
            return ChanWitness(tuple((_perm(t["V"]), Mat(t["S"])) for t in terms))
        if kind == "distinguishing-game":
            game = GameMatrix(payload["game"])
            if relation == "conditional":
                return DistinguishingCondGame(game)
            return DistinguishingChanGame(game)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed proof payload: {exc}") from exc
    except ParseError:
        raise
    except UncertaintyGamesError as exc:
        raise ParseError(f"malformed proof payload: {exc}") from exc
    raise ParseError(f"unknown proof kind {kind!r}")


def verify_proof(proof, A, B) -> bool:
    """Re-check ``proof`` against the two objects it was issued for."""
    if isinstance(proof, (CondWitness, DistinguishingCondGame)):
        if not (isinstance(A, JointDistribution) and isinstance(B, JointDistribution)):
            raise ParseError("a conditional proof needs two joint distributions")
    elif not (isinstance(A, ChannelMatrix) and isinstance(B, ChannelMatrix)):
        raise ParseError("a channel proof needs two channels")
    try:
        return proof.verify(A, B)
    except UncertaintyGamesError:
        return False
