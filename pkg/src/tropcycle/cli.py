"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 schema or usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from typing import Sequence

from scipy import sparse

from . import io
from .graphcurve import divisor_of, linearly_equivalent, reduced_divisor
from .jacobian import abel_jacobi, period_matrix
from .kunneth import KunnethSpace, kunneth_projector, li_filtration_membership
from .polycx import check_balanced
from .stablegraphs import enumerate_stable_graphs
from .tautfz import fz_relation
from .troppoly import hypersurface, newton_polygon_roots, tropicalize_point
from .tropnum import format_rat, parse_rat
from .tvhs import bb_level, evaluate_grid, gauss_manin, infinitesimal_invariant, normal_function


class UsageError(Exception):
    pass


def _read(path: str | None, kinds: Sequence[str]) -> dict:
    if path is None:
        raise UsageError("--input is required for this subcommand")
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.SchemaError([("$", f"invalid JSON: {exc}")]) from exc
    if not isinstance(doc, dict) or doc.get("kind") not in kinds:
        got = doc.get("kind") if isinstance(doc, dict) else type(doc).__name__
        raise io.SchemaError([("$.kind", f"expected one of {list(kinds)}, got {got!r}")])
    io.validate(doc)
    return doc


def _bbox(text: str | None):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--bbox expects four numbers a,b,c,d")
    return tuple(Fraction(p.strip()) for p in parts)


# ---------------------------------------------------------------- subcommands

def cmd_hypersurface(args) -> tuple[str, str]:
    f = io.from_json(_read(args.input, ["polynomial"]))
    X = hypersurface(f)
    if args.format == "svg":
        return io.complex_svg(X, _bbox(args.bbox) or (-10, 10, -10, 10)), "svg"
    return io.dumps(io.to_json(X)), "json"


def cmd_balance_check(args):
    doc = _read(args.input, ["complex", "polynomial"])
    X = io.from_json(doc)
    if doc["kind"] == "polynomial":
        X = hypersurface(X)
    rep = check_balanced(X)
    body = rep.to_dict()
    body["status"] = "balanced" if rep.balanced else "unbalanced"
    return io.dumps(io.envelope("balance_report", body)), "json"


def cmd_divisor(args):
    doc = _read(args.input, ["divisor_query"])
    G = io.graph_from_json(doc["graph"])
    out: dict = {}
    if "function" in doc:
        f = io.pl_body_from_json(G, doc["function"])
        out["divisor_of_function"] = io.divisor_terms_to_json(divisor_of(f, G))
    if "divisor" in doc:
        D = io.divisor_terms_from_json(doc["divisor"], G)
        out["degree"] = D.degree
        out["multidegree"] = D.multidegree(G)
        base = io.point_from_json(doc["base"]) if "base" in doc else None
        if base is not None:
            out["reduced"] = io.divisor_terms_to_json(reduced_divisor(D, G.canonical(base), G))
        if "other" in doc:
            E = io.divisor_terms_from_json(doc["other"], G)
            res = linearly_equivalent(D, E, G, base=G.canonical(base) if base else None,
                                      method=doc.get("method", "reduced"))
            out["equivalent"] = res.equivalent
            if res.witness is not None:
                out["witness"] = io.pl_body_to_json(res.witness)
    if not out:
        raise UsageError("divisor query needs a 'divisor' or a 'function'")
    return io.dumps(io.envelope("divisor_report", out)), "json"


def cmd_jacobian(args):
    doc = _read(args.input, ["graph"])
    return io.dumps(io.to_json(period_matrix(io.graph_from_json(doc)))), "json"


def cmd_abel_jacobi(args):
    doc = _read(args.input, ["aj_query"])
    G = io.graph_from_json(doc["graph"])
    D = io.divisor_terms_from_json(doc["divisor"], G)
    base = G.canonical(io.point_from_json(doc["base"])) if "base" in doc else None
    P = period_matrix(G, basis=doc.get("basis"))
    return io.dumps(io.to_json(abel_jacobi(D, base, P))), "json"


def _section(doc):
    F = io.family_body_from_json(doc["family"])
    Z = io.family_divisor_from_json(doc["divisor"])
    return F, normal_function(F, Z)


def _grid_points(F, n: int, box):
    d = F.n_params
    if box is None:
        box = [(Fraction(0), Fraction(2))] * d
    if len(box) != d:
        raise UsageError(f"grid box needs {d} ranges")
    axes = [[lo + (hi - lo) * (i + 1) / (n + 1) for i in range(n)] for lo, hi in box]
    pts = []
    for s in itertools.product(*axes):
        if F.in_cone(s) and all(l(s) > 0 for l in F.lengths):
            pts.append(list(s))
    return pts


def cmd_normal_function(args):
    doc = _read(args.input, ["section"])
    F, nu = _section(doc)
    box = None
    if "grid_box" in doc:
        box = [(parse_rat(a), parse_rat(b)) for a, b in doc["grid_box"]]
    elif args.bbox:
        a, b, c, e = _bbox(args.bbox)
        box = [(a, b), (c, e)][: F.n_params]
    rows = evaluate_grid(nu, _grid_points(F, args.grid, box))
    if args.format == "csv":
        return io.grid_csv(rows, F.n_params, F.genus), "csv"
    rep = infinitesimal_invariant(nu, 1)
    body = {
        "rows": [{"s": [format_rat(x) for x in r["s"]], "coords": [format_rat(x) for x in r["coords"]]}
                 for r in rows],
        "lift": [a.to_dict() for a in nu.lift()],
        "infinitesimal": rep.to_dict(),
    }
    return io.dumps(io.envelope("section_report", body)), "json"


def cmd_gm_derivative(args):
    doc = _read(args.input, ["family", "section"])
    F = io.family_body_from_json(doc["family"] if doc["kind"] == "section" else doc)
    Q0, _ = F.gram_matrix()
    body = {
        "basis": [list(b) for b in F.basis],
        "Q0": [[format_rat(x) for x in r] for r in Q0],
        "derivatives": [[[format_rat(x) for x in r] for r in gauss_manin(F, k)] for k in range(F.n_params)],
    }
    return io.dumps(io.envelope("gauss_manin", body)), "json"


def cmd_bb_level(args):
    doc = _read(args.input, ["section"])
    _, nu = _section(doc)
    return io.dumps(io.envelope("bb_level", bb_level(nu, args.max_order).to_dict())), "json"


def cmd_kunneth(args):
    doc = _read(args.input, ["kunneth_query"])
    K = KunnethSpace(tuple(doc["genera"]))
    if K.n > 3 or max(K.genera) > 3:
        raise ValueError("projector checks are run for at most three factors of genus at most 3")
    alphas = list(itertools.product((0, 1, 2), repeat=K.n))
    pis = {a: kunneth_projector(K, a) for a in alphas}
    idem = all((p @ p - p).count_nonzero() == 0 for p in pis.values())
    orth = all((pis[a] @ pis[b]).count_nonzero() == 0 for a in alphas for b in alphas if a != b)
    total = sum(pis.values())
    complete = (total - sparse.identity(K.dim, dtype=total.dtype, format="csr")).count_nonzero() == 0
    body = {
        "genera": list(K.genera),
        "dim": K.dim,
        "degree_dimensions": [K.degree_dimension(k) for k in range(2 * K.n + 1)],
        "ranks": {"".join(map(str, a)): int(pis[a].diagonal().sum()) for a in alphas},
        "idempotent": bool(idem),
        "orthogonal": bool(orth),
        "complete": bool(complete),
    }
    if "class" in doc:
        cls = [parse_rat(x) for x in doc["class"]]
        i = doc.get("i", 1)
        body["membership"] = {"i": i, "in_L_i": li_filtration_membership(K, cls, i)}
    return io.dumps(io.envelope("kunneth_report", body)), "json"


def cmd_fz_series(args):
    if args.input:
        doc = _read(args.input, ["fz_query"])
        n, r, R, reading = doc["n"], doc["r"], doc.get("R"), doc.get("reading", "kappa")
    else:
        if args.n is None or args.r is None:
            raise UsageError("fz-series needs --n and --r (or --input)")
        n, r, R, reading = args.n, args.r, args.order, args.reading
    if args.order is not None:
        R = args.order
    res = fz_relation(n, r, R, reading)
    body = res.to_dict()
    body["text"] = str(res.relation)
    return io.dumps(io.envelope("fz_relation", body)), "json"


def cmd_tropicalize(args):
    doc = _read(args.input, ["puiseux_point", "newton_polygon"])
    if doc["kind"] == "puiseux_point":
        body = {"valuations": [format_rat(x) for x in tropicalize_point(io.from_json(doc))]}
    else:
        roots = newton_polygon_roots([(v["deg"], parse_rat(v["val"])) for v in doc["valuations"]])
        body = {"roots": [{"slope": format_rat(s), "mult": m} for s, m in roots]}
    return io.dumps(io.envelope("tropicalization", body)), "json"


def cmd_enumerate_graphs(args):
    if args.g is None or args.n is None:
        raise UsageError("enumerate-graphs needs --g and --n")
    types = enumerate_stable_graphs(args.g, args.n)
    doc = io.stable_graphs_to_json(args.g, args.n, types)
    doc["maximal"] = [i for i, T in enumerate(types) if T.is_maximal()]
    return io.dumps(doc), "json"


COMMANDS = {
    "hypersurface": cmd_hypersurface,
    "balance-check": cmd_balance_check,
    "divisor": cmd_divisor,
    "jacobian": cmd_jacobian,
    "abel-jacobi": cmd_abel_jacobi,
    "normal-function": cmd_normal_function,
    "gm-derivative": cmd_gm_derivative,
    "bb-level": cmd_bb_level,
    "kunneth": cmd_kunneth,
    "fz-series": cmd_fz_series,
    "tropicalize": cmd_tropicalize,
    "enumerate-graphs": cmd_enumerate_graphs,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropcycle", description="Exact computations with tropical cycles and curves.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", "-i", help="input JSON document ('-' for stdin)")
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    p.add_argument("--grid", type=int, default=4, help="grid points per parameter axis")
    p.add_argument("--order", type=int, default=None, help="series truncation order R")
    p.add_argument("--max-order", type=int, default=2, help="highest invariant tested by bb-level")
    p.add_argument("--bbox", default=None, help="a,b,c,d: x in [a,b], y in [c,d]")
    p.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    p.add_argument("--n", type=int, default=None, help="number of marks (fz-series, enumerate-graphs)")
    p.add_argument("--r", type=int, default=None, help="z-degree for fz-series")
    p.add_argument("--g", type=int, default=None, help="genus for enumerate-graphs")
    p.add_argument("--reading", choices=["kappa", "n"], default="kappa", help="prefactor reading for fz-series")
    return p


_FORMATS = {
    "hypersurface": {"json", "svg"},
    "normal-function": {"json", "csv"},
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        allowed = _FORMATS.get(args.command, {"json"})
        if args.format not in allowed:
            raise UsageError(f"{args.command} does not produce {args.format} output")
        text, _ = COMMANDS[args.command](args)
    except io.SchemaError as exc:
        for path, msg in exc.errors:
            print(f"schema error at {path}: {msg}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, NotImplementedError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        if args.command == "fz-series":
            print(json.loads(text)["text"])
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
