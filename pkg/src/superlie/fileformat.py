"""JSON algebra files.

Layout::

    {"arity": 3,
     "even": ["e1"], "odd": ["f1", "f2"],
     "brackets": [{"args": ["f1", "f1", "f1"], "value": {"f2": {"re": "1", "im": "0"}}}]}

Serialisation is deterministic: brackets in canonical key order, value
components in basis order, fixed key order and indentation.
"""

from __future__ import annotations

import json
from pathlib import Path

from .nlie import BracketTable, LinearFunctional
from .scalar import GaussScalar
from .superspace import BasisSignature

__all__ = [
    "AlgebraFormatError",
    "table_from_document",
    "table_to_document",
    "loads",
    "dumps",
    "load",
    "dump",
    "functional_from_document",
    "functional_to_document",
]


class AlgebraFormatError(ValueError):
    pass


def _names(doc, key):
    names = doc.get(key, [])
    if not isinstance(names, list) or not all(isinstance(s, str) and s for s in names):
        raise AlgebraFormatError(f"'{key}' must be a list of non-empty names")
    return names


def _value(obj, index, where):
    if not isinstance(obj, dict):
        raise AlgebraFormatError(f"{where}: value must be an object mapping names to scalars")
    out = {}
    for name, sc in obj.items():
        if name not in index:
            raise AlgebraFormatError(f"{where}: unknown basis element {name!r}")
        try:
            out[index[name]] = GaussScalar.from_json(sc)
        except (ValueError, TypeError) as exc:
            raise AlgebraFormatError(f"{where}: {exc}") from None
    return out


def table_from_document(doc: dict, *, strict: bool = True) -> BracketTable:
    """Parse an algebra document.

    ``strict`` (the default) canonicalises argument order and rejects
    nonzero forced-zero brackets, wrongly graded values and duplicate keys.
    ``strict=False`` stores brackets exactly as written so that
    :func:`~superlie.nlie.verify_axioms` can report on them.
    """
    if not isinstance(doc, dict):
        raise AlgebraFormatError("algebra document must be a JSON object")
    unknown = set(doc) - {"arity", "even", "odd", "brackets", "name", "provenance"}
    if unknown:
        raise AlgebraFormatError(f"unknown top-level fields {sorted(unknown)}")
    arity = doc.get("arity")
    if not isinstance(arity, int) or isinstance(arity, bool) or arity < 2:
        raise AlgebraFormatError("'arity' must be an integer >= 2")
    even, odd = _names(doc, "even"), _names(doc, "odd")
    names = even + odd
    if len(set(names)) != len(names):
        raise AlgebraFormatError("basis names must be distinct")
    index = {s: i for i, s in enumerate(names)}
    sig = BasisSignature(len(even), len(odd))
    pairs = []
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise AlgebraFormatError("'brackets' must be a list")
    for pos, br in enumerate(brackets):
        where = f"bracket #{pos}"
        if not isinstance(br, dict) or set(br) != {"args", "value"}:
            raise AlgebraFormatError(f"{where}: expected an object with 'args' and 'value'")
        args = br["args"]
        if not isinstance(args, list) or len(args) != arity:
            raise AlgebraFormatError(f"{where}: 'args' must list exactly {arity} names")
        try:
            idx = tuple(index[a] for a in args)
        except (KeyError, TypeError):
            raise AlgebraFormatError(f"{where}: unknown basis element in {args}") from None
        pairs.append((idx, _value(br["value"], index, where)))
    try:
        if strict:
            return BracketTable.from_brackets(arity, sig, pairs, tuple(names))
        raw = {}
        for idx, val in pairs:
            if idx in raw:
                raise ValueError(f"duplicate bracket for arguments {idx}")
            raw[idx] = val
        return BracketTable(arity, sig, raw, tuple(names))
    except (ValueError, IndexError) as exc:
        raise AlgebraFormatError(str(exc)) from None


def table_to_document(T: BracketTable) -> dict:
    m = T.sig.even_count
    brackets = []
    for key, val in T.entries.items():
        brackets.append(
            {
                "args": [T.names[a] for a in key],
                "value": {T.names[k]: val[k].to_json() for k in sorted(val)},
            }
        )
    return {
        "arity": T.arity,
        "even": list(T.names[:m]),
        "odd": list(T.names[m:]),
        "brackets": brackets,
    }


def dumps(T: BracketTable) -> str:
    return json.dumps(table_to_document(T), indent=2, ensure_ascii=False) + "\n"


def loads(text: str, *, strict: bool = True) -> BracketTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"invalid JSON: {exc}") from None
    return table_from_document(doc, strict=strict)


def load(path, *, strict: bool = True) -> BracketTable:
    return loads(Path(path).read_text(encoding="utf-8"), strict=strict)


def dump(T: BracketTable, path) -> None:
    Path(path).write_text(dumps(T), encoding="utf-8")


def functional_from_document(doc: dict, T: BracketTable) -> LinearFunctional:
    """``{"coeffs": {name: scalar}}``; unnamed basis elements get zero."""
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise AlgebraFormatError("functional document must have a 'coeffs' object")
    index = {s: i for i, s in enumerate(T.names)}
    vals = _value(doc["coeffs"], index, "functional")
    return LinearFunctional(tuple(vals.get(i, GaussScalar(0)) for i in range(T.dim)))


def functional_to_document(S: LinearFunctional, T: BracketTable) -> dict:
    return {"coeffs": {T.names[i]: c.to_json() for i, c in enumerate(S.coeffs) if c}}
