"""JSON serialization, schema validation and CSV/SVG emission.

Every top-level document carries ``"schema": "tropcycle/1"`` and a ``"kind"``
naming the payload.  Rationals are strings ``"p/q"`` (or ``"p"``).  Output is
deterministic: keys are sorted and lists keep the canonical order of the
underlying objects, so ``dumps(load(dumps(x))) == dumps(x)`` byte for byte.

Marks on graphs are points (vertices or edge offsets); in stable-graph types
marks are labelled legs attached to vertices.
"""

from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from typing import Any

import jsonschema

from .graphcurve import Divisor, GraphPoint, MetricGraph, PLFunction
from .jacobian import JacPoint, PeriodData
from .polycx import Polyhedron, WeightedComplex
from .stablegraphs import StableGraphType
from .tautfz import TautExpr
from .troppoly import PuiseuxPoint, TropPoly
from .tropnum import format_rat, parse_rat
from .tvhs import Affine, CurveFamily, DivisorFamily, Mark

SCHEMA_VERSION = "tropcycle/1"


class SchemaError(ValueError):
    """Input does not match its schema; ``errors`` lists ``(path, message)``."""

    def __init__(self, errors: list[tuple[str, str]]):
        self.errors = errors
        super().__init__("; ".join(f"{p}: {m}" for p, m in errors))


# ---------------------------------------------------------------- schemas

_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_INT = {"type": "integer"}
_NAT = {"type": "integer", "minimum": 0}
_RATVEC = {"type": "array", "items": _RAT}

_POINT = {
    "oneOf": [
        {"type": "object", "required": ["vertex"], "additionalProperties": False, "properties": {"vertex": _NAT}},
        {
            "type": "object",
            "required": ["edge", "offset"],
            "additionalProperties": False,
            "properties": {"edge": _NAT, "offset": _RAT},
        },
    ]
}

_GRAPH = {
    "type": "object",
    "required": ["vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "vertices": {
            "type": "array",
            "items": {"type": "object", "required": ["weight"], "additionalProperties": False,
                      "properties": {"weight": _NAT}},
        },
        "edges": {
            "type": "array",
            "items": {"type": "object", "required": ["u", "v", "len"], "additionalProperties": False,
                      "properties": {"u": _NAT, "v": _NAT, "len": _RAT}},
        },
        "marks": {"type": "array", "items": _POINT},
        "allow_leaves": {"type": "boolean"},
    },
}

_DIVISOR_TERMS = {
    "type": "array",
    "items": {"type": "object", "required": ["point", "mult"], "additionalProperties": False,
              "properties": {"point": _POINT, "mult": _INT}},
}

_PL_FUNCTION = {
    "type": "object",
    "required": ["vertex_values", "breaks"],
    "additionalProperties": False,
    "properties": {
        "vertex_values": _RATVEC,
        "breaks": {"type": "array", "items": {"type": "array", "items": {"type": "array", "items": _RAT,
                                                                         "minItems": 2, "maxItems": 2}}},
    },
}

_CONSTRAINT = {"type": "object", "required": ["normal", "offset"], "additionalProperties": False,
               "properties": {"normal": _RATVEC, "offset": _RAT}}

_AFFINE = {"type": "object", "required": ["const", "coeffs"], "additionalProperties": False,
           "properties": {"const": _RAT, "coeffs": _RATVEC}}

_FAMILY = {
    "type": "object",
    "required": ["graph", "length_exprs"],
    "additionalProperties": False,
    "properties": {
        "graph": _GRAPH,
        "length_exprs": {"type": "array", "items": _AFFINE},
        "cone": {"type": "array", "items": _CONSTRAINT},
        "marks": {
            "type": "array",
            "items": {"oneOf": [
                {"type": "object", "required": ["vertex"], "additionalProperties": False,
                 "properties": {"vertex": _NAT}},
                {"type": "object", "required": ["edge", "offset"], "additionalProperties": False,
                 "properties": {"edge": _NAT, "offset": _AFFINE}},
            ]},
        },
        "basis": {"type": "array", "items": {"type": "array", "items": _INT}},
    },
}

_FAMILY_DIVISOR = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["point", "mult"],
        "additionalProperties": False,
        "properties": {
            "point": {"oneOf": [
                {"type": "object", "required": ["mark"], "additionalProperties": False, "properties": {"mark": _NAT}},
                {"type": "object", "required": ["vertex"], "additionalProperties": False,
                 "properties": {"vertex": _NAT}},
            ]},
            "mult": _INT,
        },
    },
}

_TAUT_TERMS = {
    "type": "array",
    "items": {"type": "object", "required": ["coeff", "monomial"], "additionalProperties": False,
              "properties": {"coeff": _RAT, "monomial": {"type": "array", "items": {"type": "string"}}}},
}

_STABLE_GRAPH = {
    "type": "object",
    "required": ["weights", "edges", "legs"],
    "additionalProperties": False,
    "properties": {
        "weights": {"type": "array", "items": _NAT},
        "edges": {"type": "array", "items": {"type": "array", "items": _NAT, "minItems": 2, "maxItems": 2}},
        "legs": {"type": "array", "items": _NAT},
    },
}


def _doc(kind: str, required: list[str], props: dict) -> dict:
    return {
        "type": "object",
        "required": ["schema", "kind", *required],
        "additionalProperties": False,
        "properties": {"schema": {"const": SCHEMA_VERSION}, "kind": {"const": kind}, **props},
    }


SCHEMAS: dict[str, dict] = {
    "polynomial": _doc("polynomial", ["vars", "terms"], {
        "vars": {"type": "integer", "minimum": 1},
        "terms": {"type": "array", "minItems": 1, "items": {
            "type": "object", "required": ["coeff", "exp"], "additionalProperties": False,
            "properties": {"coeff": _RAT, "exp": {"type": "array", "items": _NAT}}}},
    }),
    "complex": _doc("complex", ["ambient_dim", "cells", "incidence", "weights"], {
        "ambient_dim": _NAT,
        "cells": {"type": "array", "items": {
            "type": "object", "required": ["dim", "ineqs", "eqs"], "additionalProperties": False,
            "properties": {"dim": _INT, "ineqs": {"type": "array", "items": _CONSTRAINT},
                           "eqs": {"type": "array", "items": _CONSTRAINT}}}},
        "incidence": {"type": "array", "items": {"type": "array", "items": _NAT, "minItems": 2, "maxItems": 2}},
        "weights": {"type": "object", "patternProperties": {"^[0-9]+$": _INT}, "additionalProperties": False},
    }),
    "graph": _doc("graph", ["vertices", "edges"], _GRAPH["properties"]),
    "divisor": _doc("divisor", ["terms"], {"terms": _DIVISOR_TERMS}),
    "pl_function": _doc("pl_function", ["graph", "vertex_values", "breaks"],
                        {"graph": _GRAPH, **_PL_FUNCTION["properties"]}),
    "period_data": _doc("period_data", ["graph", "basis", "Q"], {
        "graph": _GRAPH,
        "basis": {"type": "array", "items": {"type": "array", "items": _INT}},
        "Q": {"type": "array", "items": _RATVEC},
    }),
    "jacpoint": _doc("jacpoint", ["coords", "lattice"], {"coords": _RATVEC, "lattice": {"const": "Q-columns"}}),
    "family": _doc("family", ["graph", "length_exprs"], _FAMILY["properties"]),
    "family_divisor": _doc("family_divisor", ["terms"], {"terms": _FAMILY_DIVISOR}),
    "taut_expr": _doc("taut_expr", ["terms"], {"terms": _TAUT_TERMS}),
    "stable_graphs": _doc("stable_graphs", ["g", "n", "types"], {
        "g": _NAT, "n": _NAT, "types": {"type": "array", "items": _STABLE_GRAPH}}),
    "puiseux_point": _doc("puiseux_point", ["coordinates"], {
        "coordinates": {"type": "array", "items": {"type": "array", "items": {
            "type": "object", "required": ["exp", "coeff"], "additionalProperties": False,
            "properties": {"exp": _RAT, "coeff": {"type": "string"}}}}}}),
    "newton_polygon": _doc("newton_polygon", ["valuations"], {
        "valuations": {"type": "array", "minItems": 2, "items": {
            "type": "object", "required": ["deg", "val"], "additionalProperties": False,
            "properties": {"deg": _NAT, "val": _RAT}}}}),
    # composite inputs for the command line
    "divisor_query": _doc("divisor_query", ["graph"], {
        "graph": _GRAPH,
        "divisor": _DIVISOR_TERMS,
        "other": _DIVISOR_TERMS,
        "base": _POINT,
        "function": _PL_FUNCTION,
        "method": {"enum": ["reduced", "flow"]},
    }),
    "aj_query": _doc("aj_query", ["graph", "divisor"], {
        "graph": _GRAPH, "divisor": _DIVISOR_TERMS, "base": _POINT,
        "basis": {"type": "array", "items": {"type": "array", "items": _INT}},
    }),
    "section": _doc("section", ["family", "divisor"], {
        "family": _FAMILY,
        "divisor": _FAMILY_DIVISOR,
        "grid_box": {"type": "array", "items": {"type": "array", "items": _RAT, "minItems": 2, "maxItems": 2}},
    }),
    "kunneth_query": _doc("kunneth_query", ["genera"], {
        "genera": {"type": "array", "minItems": 1, "items": _NAT},
        "class": _RATVEC,
        "i": _INT,
    }),
    "fz_query": _doc("fz_query", ["n", "r"], {
        "n": {"type": "integer", "minimum": 1}, "r": _NAT, "R": _NAT, "reading": {"enum": ["kappa", "n"]}}),
}


def _path(err) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)


def validate(doc: Any, kind: str | None = None) -> None:
    """Raise SchemaError listing every offending path; ``kind`` defaults to ``doc["kind"]``."""
    if kind is None:
        if not isinstance(doc, dict) or "kind" not in doc:
            raise SchemaError([("$", "document needs a 'kind' field")])
        kind = doc["kind"]
    if kind not in SCHEMAS:
        raise SchemaError([("$.kind", f"unknown kind {kind!r}")])
    v = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errs = sorted(v.iter_errors(doc), key=lambda e: (_path(e), e.message))
    if errs:
        raise SchemaError([(_path(e), e.message) for e in errs])


def dumps(doc: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def envelope(kind: str, body: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "kind": kind, **body}


# ---------------------------------------------------------------- pieces

def _r(x) -> str:
    return format_rat(x)


def _constraint_out(rows) -> list[dict]:
    return [{"normal": [_r(x) for x in a], "offset": _r(b)} for a, b in rows]


def _constraint_in(rows) -> tuple:
    return tuple((tuple(parse_rat(x) for x in c["normal"]), parse_rat(c["offset"])) for c in rows)


def point_to_json(p: GraphPoint) -> dict:
    if p.vertex is not None:
        return {"vertex": p.vertex}
    return {"edge": p.edge, "offset": _r(p.offset)}


def point_from_json(d: dict) -> GraphPoint:
    if "vertex" in d:
        return GraphPoint(vertex=int(d["vertex"]))
    return GraphPoint(edge=int(d["edge"]), offset=parse_rat(d["offset"]))


def graph_to_json(G: MetricGraph) -> dict:
    return {
        "vertices": [{"weight": w} for w in G.vertex_weights],
        "edges": [{"u": u, "v": v, "len": _r(l)} for u, v, l in G.edges],
        "marks": [point_to_json(p) for p in G.marks],
        "allow_leaves": G.allow_leaves,
    }


def graph_from_json(d: dict) -> MetricGraph:
    return MetricGraph(
        tuple(v["weight"] for v in d["vertices"]),
        tuple((e["u"], e["v"], parse_rat(e["len"])) for e in d["edges"]),
        tuple(point_from_json(p) for p in d.get("marks", [])),
        allow_leaves=bool(d.get("allow_leaves", False)),
    )


def divisor_terms_to_json(D: Divisor) -> list[dict]:
    return [{"point": point_to_json(p), "mult": m} for p, m in D.items()]


def divisor_terms_from_json(terms, G: MetricGraph | None = None) -> Divisor:
    items = [(point_from_json(t["point"]), t["mult"]) for t in terms]
    return Divisor.of(G, items) if G is not None else Divisor(items)


def pl_body_to_json(f: PLFunction) -> dict:
    return {
        "vertex_values": [_r(x) for x in f.vertex_values],
        "breaks": [[[_r(t), _r(y)] for t, y in b] for b in f.breaks],
    }


def pl_body_from_json(G: MetricGraph, d: dict) -> PLFunction:
    return PLFunction(
        G,
        tuple(parse_rat(x) for x in d["vertex_values"]),
        tuple(tuple((parse_rat(t), parse_rat(y)) for t, y in b) for b in d["breaks"]),
    )


def affine_from_json(d: dict) -> Affine:
    return Affine(parse_rat(d["const"]), tuple(parse_rat(c) for c in d["coeffs"]))


def family_body_to_json(F: CurveFamily) -> dict:
    marks = []
    for m in F.marks:
        marks.append({"vertex": m.vertex} if m.vertex is not None else {"edge": m.edge, "offset": m.offset.to_dict()})
    return {
        "graph": graph_to_json(F.graph),
        "length_exprs": [l.to_dict() for l in F.lengths],
        "cone": _constraint_out(F.cone),
        "marks": marks,
        "basis": [list(b) for b in F.basis],
    }


def family_body_from_json(d: dict) -> CurveFamily:
    marks = tuple(
        Mark(vertex=int(m["vertex"])) if "vertex" in m else Mark(edge=int(m["edge"]), offset=affine_from_json(m["offset"]))
        for m in d.get("marks", [])
    )
    basis = d.get("basis")
    return CurveFamily(
        graph_from_json(d["graph"]),
        tuple(affine_from_json(a) for a in d["length_exprs"]),
        _constraint_in(d.get("cone", [])),
        marks,
        None if basis is None else tuple(tuple(int(x) for x in b) for b in basis),
    )


def family_divisor_to_json(Z: DivisorFamily) -> list[dict]:
    return [{"point": {kind: idx}, "mult": m} for (kind, idx), m in Z.terms]


def family_divisor_from_json(terms) -> DivisorFamily:
    out = []
    for t in terms:
        (kind, idx), = t["point"].items()
        out.append(((kind, idx), t["mult"]))
    return DivisorFamily(tuple(out))


# ---------------------------------------------------------------- documents

def to_json(x: Any) -> dict:
    """Top-level document for a domain object."""
    if isinstance(x, TropPoly):
        return envelope("polynomial", {
            "vars": x.n_vars,
            "terms": [{"coeff": _r(c), "exp": list(e)} for e, c in x.terms],
        })
    if isinstance(x, WeightedComplex):
        return envelope("complex", {
            "ambient_dim": x.ambient_dim,
            "cells": [{"dim": c.dim, "ineqs": _constraint_out(c.ineqs), "eqs": _constraint_out(c.eqs)} for c in x.cells],
            "incidence": [list(p) for p in sorted(x.incidence)],
            "weights": {str(k): int(w) for k, w in sorted(x.weights.items())},
        })
    if isinstance(x, MetricGraph):
        return envelope("graph", graph_to_json(x))
    if isinstance(x, Divisor):
        return envelope("divisor", {"terms": divisor_terms_to_json(x)})
    if isinstance(x, PLFunction):
        return envelope("pl_function", {"graph": graph_to_json(x.graph), **pl_body_to_json(x)})
    if isinstance(x, PeriodData):
        return envelope("period_data", {"graph": graph_to_json(x.graph), **x.to_dict()})
    if isinstance(x, JacPoint):
        return envelope("jacpoint", x.to_dict())
    if isinstance(x, CurveFamily):
        return envelope("family", family_body_to_json(x))
    if isinstance(x, DivisorFamily):
        return envelope("family_divisor", {"terms": family_divisor_to_json(x)})
    if isinstance(x, TautExpr):
        return envelope("taut_expr", {"terms": x.to_json()})
    if isinstance(x, PuiseuxPoint):
        return envelope("puiseux_point", {
            "coordinates": [[{"exp": _r(e), "coeff": tag} for e, tag in c] for c in x.coordinates]})
    raise TypeError(f"no serializer for {type(x).__name__}")


def stable_graphs_to_json(g: int, n: int, types) -> dict:
    return envelope("stable_graphs", {"g": g, "n": n, "types": [T.to_dict() for T in types]})


def from_json(doc: dict) -> Any:
    """Validate a document and rebuild the domain object it describes."""
    validate(doc)
    kind = doc["kind"]
    if kind == "polynomial":
        if any(len(t["exp"]) != doc["vars"] for t in doc["terms"]):
            bad = [(f"$.terms[{i}].exp", f"expected {doc['vars']} entries")
                   for i, t in enumerate(doc["terms"]) if len(t["exp"]) != doc["vars"]]
            raise SchemaError(bad)
        return TropPoly(doc["vars"], tuple((tuple(t["exp"]), parse_rat(t["coeff"])) for t in doc["terms"]))
    if kind == "complex":
        n = doc["ambient_dim"]
        cells = []
        for i, c in enumerate(doc["cells"]):
            P = Polyhedron(n, _constraint_in(c["ineqs"]), _constraint_in(c["eqs"]))
            if P.dim != c["dim"]:
                raise ValueError(f"cell {i} declares dimension {c['dim']} but has dimension {P.dim}")
            cells.append(P)
        X = WeightedComplex(n, cells, [tuple(p) for p in doc["incidence"]],
                            {int(k): int(w) for k, w in doc["weights"].items()})
        X.validate()
        return X
    if kind == "graph":
        return graph_from_json(doc)
    if kind == "divisor":
        return divisor_terms_from_json(doc["terms"])
    if kind == "pl_function":
        return pl_body_from_json(graph_from_json(doc["graph"]), doc)
    if kind == "period_data":
        from .jacobian import period_matrix

        P = period_matrix(graph_from_json(doc["graph"]), basis=doc["basis"])
        if P.to_dict()["Q"] != doc["Q"]:
            raise ValueError("stored Q does not match the Gram matrix of the basis")
        return P
    if kind == "jacpoint":
        return JacPoint(tuple(parse_rat(x) for x in doc["coords"]))
    if kind == "family":
        return family_body_from_json(doc)
    if kind == "family_divisor":
        return family_divisor_from_json(doc["terms"])
    if kind == "taut_expr":
        return TautExpr.from_json(doc["terms"])
    if kind == "stable_graphs":
        return [StableGraphType.from_dict(t) for t in doc["types"]]
    if kind == "puiseux_point":
        return PuiseuxPoint(tuple(tuple((parse_rat(t["exp"]), t["coeff"]) for t in c) for c in doc["coordinates"]))
    raise SchemaError([("$.kind", f"kind {kind!r} is a query, not a domain object")])


def loads(text: str) -> Any:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([("$", f"invalid JSON: {exc}")]) from exc
    return from_json(doc)


# ---------------------------------------------------------------- CSV / SVG

def grid_csv(rows: list[dict], n_params: int, genus: int) -> str:
    """Columns s_1..s_d, c_1..c_g (reduced section), then the flattened first derivatives."""
    n_delta = max((len(r["delta"]) for r in rows), default=0)
    header = [f"s_{k + 1}" for k in range(n_params)] + [f"c_{i + 1}" for i in range(genus)]
    header += [f"delta_{k // max(genus, 1) + 1}_{k % max(genus, 1) + 1}" for k in range(n_delta)]
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_r(x) for x in r["s"]] + [_r(x) for x in r["coords"]] + [_r(x) for x in r["delta"]])
    return buf.getvalue()


def _clip_ray(p, d, box):
    """Largest t >= 0 with p + t d inside the box."""
    a, b, c, e = box
    t = None
    for x, dx, lo, hi in ((p[0], d[0], a, b), (p[1], d[1], c, e)):
        if dx > 0:
            s = (hi - x) / dx
        elif dx < 0:
            s = (lo - x) / dx
        else:
            continue
        t = s if t is None else min(t, s)
    return max(t or Fraction(0), Fraction(0))


def complex_svg(X: WeightedComplex, bbox=(-10, 10, -10, 10), size: int = 400) -> str:
    """Static drawing of the one-dimensional cells of a plane complex, weights as labels."""
    if X.ambient_dim != 2:
        raise ValueError("SVG output is available for plane complexes only")
    a, b, c, e = (Fraction(x) for x in bbox)
    if not (a < b and c < e):
        raise ValueError("bounding box must satisfy a < b and c < d")
    sx = Fraction(size) / (b - a)
    sy = Fraction(size) / (e - c)

    def px(p):
        return f"{float((p[0] - a) * sx):.3f}", f"{float((e - p[1]) * sy):.3f}"

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect x="0" y="0" width="{size}" height="{size}" fill="white" stroke="black" stroke-width="1"/>']
    for i, cell in enumerate(X.cells):
        if cell.dim != 1:
            continue
        verts = list(cell.vertices)
        if cell.lineality:
            d = cell.lineality[0]
            p = verts[0] if verts else cell.relint_point()
            q0 = [p[k] + _clip_ray(p, d, (a, b, c, e)) * d[k] for k in range(2)]
            nd = [-x for x in d]
            q1 = [p[k] + _clip_ray(p, nd, (a, b, c, e)) * nd[k] for k in range(2)]
            ends = [q1, q0]
        elif cell.rays:
            p, d = verts[0], cell.rays[0]
            ends = [p, [p[k] + _clip_ray(p, d, (a, b, c, e)) * d[k] for k in range(2)]]
        else:
            ends = [verts[0], verts[1]]
        (x1, y1), (x2, y2) = px(ends[0]), px(ends[1])
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="2"/>')
        w = X.weights.get(i)
        if w is not None and w != 1:
            mx, my = px([(ends[0][k] + ends[1][k]) / 2 for k in range(2)])
            lines.append(f'<text x="{mx}" y="{my}" font-size="12" fill="blue">{w}</text>')
    for cell in X.cells:
        if cell.dim == 0:
            x, y = px(cell.vertices[0])
            lines.append(f'<circle cx="{x}" cy="{y}" r="3" fill="red"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
