"""Canonical JSON for every element type.

Integers are written as decimal strings, keys are sorted and terms come in
the canonical order of each algebra, so equal inputs give identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .afweyl import AffinePermutation
from .core import PeriodicMatrix, PeriodicVector
from .garland import GarlandPolynomial, poly_from_json, poly_to_json
from .hyper import HyperElement
from .kstab import KBarElement, KElement, KHatClassElement
from .modp import ModPContext
from .rings import ring_from_name
from .schur import SchurElement


def _int(s) -> int:
    if isinstance(s, bool):
        raise ValueError("booleans are not integers")
    if isinstance(s, int):
        return s
    if isinstance(s, str):
        return int(s)
    raise ValueError(f"expected an integer, got {s!r}")


def coeff_to_json(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def coeff_from_json(s, ring):
    return ring(Fraction(s) if "/" in str(s) else _int(s))


def matrix_to_json(A: PeriodicMatrix) -> dict:
    return {"n": str(A.n),
            "offdiag": [[str(i), str(j), str(a)] for i, j, a in A.off],
            "diag": [str(d) for d in A.diag]}


def matrix_from_json(doc: dict) -> PeriodicMatrix:
    n = _int(doc["n"])
    off = [(_int(i), _int(j), _int(a)) for i, j, a in doc.get("offdiag", [])]
    diag = [_int(d) for d in doc.get("diag", [0] * n)]
    if len(diag) != n:
        raise ValueError(f"diag has {len(diag)} entries, expected {n}")
    return PeriodicMatrix(n, off, diag)


def vector_to_json(v) -> list:
    return [str(x) for x in v]


def vector_from_json(doc) -> PeriodicVector:
    return PeriodicVector(_int(x) for x in doc)


def perm_to_json(w: AffinePermutation) -> dict:
    return {"r": str(len(w.window)), "window": [str(x) for x in w.window]}


def perm_from_json(doc: dict) -> AffinePermutation:
    window = [_int(x) for x in doc["window"]]
    if "r" in doc and _int(doc["r"]) != len(window):
        raise ValueError("window length differs from r")
    return AffinePermutation(window)


def to_json(x) -> dict:
    """Encode an element of any algebra (or a matrix / polynomial)."""
    if isinstance(x, PeriodicMatrix):
        return matrix_to_json(x)
    if isinstance(x, GarlandPolynomial):
        return poly_to_json(x)
    if isinstance(x, AffinePermutation):
        return perm_to_json(x)
    if isinstance(x, SchurElement):
        return {"algebra": "schur", "n": str(x.n), "r": str(x.r), "ring": x.ring.name,
                "terms": [{"coeff": coeff_to_json(c), "matrix": matrix_to_json(A)}
                          for A, c in x.sorted_items()]}
    if isinstance(x, HyperElement):
        return {"algebra": "hyper", "n": str(x.n), "ring": x.ring.name, "basis": x.basis,
                "terms": [{"coeff": coeff_to_json(c), "matrix": matrix_to_json(A),
                           "lambda": vector_to_json(lam)} for (A, lam), c in x.sorted_items()]}
    if isinstance(x, KElement):
        return {"algebra": "k", "n": str(x.n), "ring": x.ring.name,
                "terms": [{"coeff": coeff_to_json(c), "matrix": matrix_to_json(A)}
                          for A, c in x.sorted_items()]}
    if isinstance(x, (KBarElement, KHatClassElement)):
        tag = "kbar" if isinstance(x, KBarElement) else "khat"
        return {"algebra": tag, "n": str(x.n), "ring": x.ring.name,
                "p": str(x.ctx.p), "h": str(x.ctx.h),
                "terms": [{"coeff": coeff_to_json(c), "index": {
                    "offdiag": matrix_to_json(A),
                    "diag_mod": {"p": str(x.ctx.p), "h": str(x.ctx.h), "residues": vector_to_json(res)}}}
                    for (A, res), c in x.sorted_items()]}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def from_json(doc: dict):
    """Inverse of :func:`to_json`."""
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")
    kind = doc.get("algebra")
    if kind is None:
        if "offdiag" in doc and "n" in doc:
            return matrix_from_json(doc)
        if "window" in doc:
            return perm_from_json(doc)
        if "terms" in doc:
            return poly_from_json(doc)
        raise ValueError("unrecognised document")
    n = _int(doc["n"])
    if kind in ("kbar", "khat"):
        ctx = ModPContext(_int(doc["p"]), _int(doc["h"]))
        terms = {}
        for t in doc["terms"]:
            idx = t["index"]
            dm = idx["diag_mod"]
            if ModPContext(_int(dm["p"]), _int(dm["h"])) != ctx:
                raise ValueError("a term disagrees with the element on p and h")
            key = (matrix_from_json(idx["offdiag"]), tuple(_int(v) for v in dm["residues"]))
            terms[key] = coeff_from_json(t["coeff"], ctx.field)
        cls = KBarElement if kind == "kbar" else KHatClassElement
        return cls(terms, n=n, ctx=ctx)
    ring = ring_from_name(doc.get("ring", "Z"))
    if kind == "schur":
        terms = {matrix_from_json(t["matrix"]): coeff_from_json(t["coeff"], ring) for t in doc["terms"]}
        return SchurElement(terms, n=n, r=_int(doc["r"]), ring=ring)
    if kind == "hyper":
        terms = {(matrix_from_json(t["matrix"]), tuple(_int(v) for v in t["lambda"])):
                 coeff_from_json(t["coeff"], ring) for t in doc["terms"]}
        return HyperElement(terms, n=n, ring=ring, basis=doc.get("basis", "B"))
    if kind == "k":
        terms = {matrix_from_json(t["matrix"]): coeff_from_json(t["coeff"], ring) for t in doc["terms"]}
        return KElement(terms, n=n, ring=ring)
    raise ValueError(f"unknown algebra {kind!r}")


def dumps(x: Any) -> str:
    doc = x if isinstance(x, (dict, list)) else to_json(x)
    return json.dumps(doc, sort_keys=True, ensure_ascii=False)


def loads(text: str):
    return from_json(json.loads(text))
