"""JSON documents for complexes and splines.

Complex document::

    {"ambient_dim": 2, "kind": "polytopal2d",
     "vertices": [["-1", "1"], [1, 1], ...],
     "facets": [[1, 0, 4, 5], ...]}

Spline document::

    {"mode": "filtered", "pieces": [[{"monomial": [2, 0], "coeff": "1"}], ...]}

Unknown fields are rejected in both.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .complex import KINDS, PolytopalComplex

COMPLEX_FIELDS = {"ambient_dim", "kind", "vertices", "facets"}
SPLINE_FIELDS = {"mode", "pieces"}
TERM_FIELDS = {"monomial", "coeff"}
MODES = ("filtered", "homogeneous")


class DocumentError(ValueError):
    pass


def _read(doc) -> Any:
    if isinstance(doc, (str, Path)):
        text = Path(doc).read_text() if Path(str(doc)).exists() else str(doc)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"malformed JSON: {e}") from None
    return doc


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(f"expected an integer or rational string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"bad rational {x!r}") from None


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_complex_doc(doc) -> dict:
    doc = _read(doc)
    if not isinstance(doc, dict):
        raise DocumentError("complex document must be a JSON object")
    unknown = set(doc) - COMPLEX_FIELDS
    if unknown:
        raise DocumentError(f"unknown fields: {sorted(unknown)}")
    missing = COMPLEX_FIELDS - set(doc)
    if missing:
        raise DocumentError(f"missing fields: {sorted(missing)}")
    n = doc["ambient_dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("ambient_dim must be a positive integer")
    if doc["kind"] not in KINDS:
        raise DocumentError(f"kind must be one of {KINDS}")
    if not isinstance(doc["vertices"], list) or not isinstance(doc["facets"], list):
        raise DocumentError("vertices and facets must be arrays")
    verts = []
    for v in doc["vertices"]:
        if not isinstance(v, list) or len(v) != n:
            raise DocumentError(f"vertex {v!r} must be an array of length {n}")
        verts.append(tuple(parse_rational(x) for x in v))
    facets = []
    for f in doc["facets"]:
        if not isinstance(f, list) or not all(isinstance(i, int) and not isinstance(i, bool)
                                              for i in f):
            raise DocumentError(f"facet {f!r} must be an array of vertex indices")
        facets.append(tuple(f))
    return {"ambient_dim": n, "kind": doc["kind"], "vertices": verts, "facets": facets}


def load_complex(doc) -> PolytopalComplex:
    """Build a complex from a document (dict, JSON text, or path)."""
    d = parse_complex_doc(doc)
    return PolytopalComplex(d["ambient_dim"], d["kind"], d["vertices"], d["facets"])


def complex_to_doc(P: PolytopalComplex) -> dict:
    return {
        "ambient_dim": P.ambient_dim,
        "kind": P.kind,
        "vertices": [[rational_str(x) if Fraction(x).denominator != 1 else int(x) for x in v]
                     for v in P.vertices],
        "facets": [list(f) for f in P.facet_vertices],
    }


def parse_spline_doc(doc, P: PolytopalComplex) -> tuple[str, list[dict]]:
    """Return ``(mode, per-facet polynomials)``."""
    doc = _read(doc)
    if not isinstance(doc, dict):
        raise DocumentError("spline document must be a JSON object")
    unknown = set(doc) - SPLINE_FIELDS
    if unknown:
        raise DocumentError(f"unknown fields: {sorted(unknown)}")
    mode = doc.get("mode", "filtered")
    if mode not in MODES:
        raise DocumentError(f"mode must be one of {MODES}")
    pieces = doc.get("pieces")
    if not isinstance(pieces, list) or len(pieces) != P.num_facets:
        raise DocumentError(f"pieces must list one polynomial per facet ({P.num_facets})")
    nv = P.n + (1 if mode == "homogeneous" else 0)
    out = []
    for piece in pieces:
        if not isinstance(piece, list):
            raise DocumentError("each piece must be an array of terms")
        poly: dict = {}
        for term in piece:
            if not isinstance(term, dict) or set(term) != TERM_FIELDS:
                raise DocumentError(f"term {term!r} must have exactly {sorted(TERM_FIELDS)}")
            e = term["monomial"]
            if (not isinstance(e, list) or len(e) != nv
                    or not all(isinstance(k, int) and not isinstance(k, bool) and k >= 0
                               for k in e)):
                raise DocumentError(f"monomial {e!r} must list {nv} nonnegative exponents")
            c = parse_rational(term["coeff"])
            e = tuple(e)
            poly[e] = poly.get(e, 0) + c
        out.append({e: c for e, c in poly.items() if c != 0})
    return mode, out


def spline_to_doc(pieces: list[dict], mode: str) -> dict:
    return {
        "mode": mode,
        "pieces": [
            [{"monomial": list(e), "coeff": rational_str(c)} for e, c in sorted(p.items())]
            for p in pieces
        ],
    }
