"""JSON document schemas for sequences, elements, matrices and factor lists.

Complex numbers travel as [re, im] pairs (bare reals are accepted on input).
Floats are emitted with Python's shortest-roundtrip repr, so every document
reconstructs bit-identically in double precision.
"""

from __future__ import annotations

from typing import Any

from . import weights as weights_mod
from .algebra import Element, from_raw_coeffs
from .coeffseq import EPSeq
from .errors import SchemaError
from .matalg import ElementaryFactor, MatElement


def _c_to_json(v: complex) -> list[float]:
    return [v.real, v.imag]


def _c_from_json(obj: Any) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if (isinstance(obj, (list, tuple)) and len(obj) == 2
            and all(isinstance(x, (int, float)) for x in obj)):
        return complex(obj[0], obj[1])
    raise SchemaError(f"expected a number or [re, im] pair, got {obj!r}")


def epseq_to_json(s: EPSeq) -> dict:
    return {"prefix": [_c_to_json(v) for v in s.prefix],
            "cycle": [_c_to_json(v) for v in s.cycle]}


def epseq_from_json(obj: Any) -> EPSeq:
    if not isinstance(obj, dict) or "cycle" not in obj:
        raise SchemaError("sequence document needs a 'cycle' field")
    try:
        return EPSeq(tuple(_c_from_json(v) for v in obj.get("prefix", [])),
                     tuple(_c_from_json(v) for v in obj["cycle"]))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def element_to_json(e: Element) -> dict:
    if not e.exact:
        raise SchemaError("generated sequences are not serializable")
    return {"weight": e.weight.name, "normalized": epseq_to_json(e.u)}


def element_from_json(obj: Any) -> Element:
    if not isinstance(obj, dict) or "weight" not in obj:
        raise SchemaError("element document needs a 'weight' field")
    w = weights_mod.from_name(obj["weight"])
    if "normalized" in obj:
        return Element(w, epseq_from_json(obj["normalized"]))
    if "raw_prefix" in obj:
        if obj.get("tail", "zero") != "zero":
            raise SchemaError("raw form only supports tail = 'zero'")
        return from_raw_coeffs(w, [_c_from_json(v) for v in obj["raw_prefix"]])
    raise SchemaError("element document needs 'normalized' or 'raw_prefix'")


def matrix_to_json(A: MatElement) -> dict:
    return {"weight": A.weight.name, "rows": A.m, "cols": A.n,
            "entries": [[epseq_to_json(e.u) for e in row]
                        for row in A.entries]}


def matrix_from_json(obj: Any) -> MatElement:
    if not isinstance(obj, dict) or "entries" not in obj or "weight" not in obj:
        raise SchemaError("matrix document needs 'weight' and 'entries'")
    w = weights_mod.from_name(obj["weight"])
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries:
        raise SchemaError("'entries' must be a nonempty list of rows")
    rows = tuple(tuple(Element(w, epseq_from_json(cell)) for cell in row)
                 for row in entries)
    A = MatElement(w, rows)
    if "rows" in obj and obj["rows"] != A.m:
        raise SchemaError(f"declared rows={obj['rows']} but found {A.m}")
    if "cols" in obj and obj["cols"] != A.n:
        raise SchemaError(f"declared cols={obj['cols']} but found {A.n}")
    return A


def factors_to_json(factors) -> list[dict]:
    return [{"i": f.i, "j": f.j, "alpha": element_to_json(f.alpha)}
            for f in factors]


def factors_from_json(obj: Any) -> list[ElementaryFactor]:
    return [ElementaryFactor(d["i"], d["j"], element_from_json(d["alpha"]))
            for d in obj]
