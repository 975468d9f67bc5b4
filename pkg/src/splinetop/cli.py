"""``splinetop`` command line.

Exit codes: 0 success, 2 invalid input or options, 3 a computed result
broke one of its own checks (oracle mismatch, failed assertion).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import arrangement as arr
from . import hilbert, oracle, polys
from .complex import ComplexError, PolytopalComplex, validate_complex
from .fixtures import FIXTURE_DOCS, tn_doc
from .io import DocumentError, complex_to_doc, load_complex, parse_spline_doc, rational_str
from .splines import (
    SplineError,
    decompose,
    is_spline,
    ls_space,
    spline_basis,
)

EXIT_OK, EXIT_INPUT, EXIT_CONTRACT = 0, 2, 3


class UsageError(Exception):
    pass


def _emit(out, fmt: str, data, text_lines: Sequence[str], csv_text: str | None = None):
    if fmt == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for tables")
        out.write(csv_text)
    else:
        out.write("\n".join(text_lines) + "\n")


def _complex(args) -> PolytopalComplex:
    if args.fixture:
        if args.fixture not in FIXTURE_DOCS:
            raise UsageError(f"unknown fixture {args.fixture!r}; known: {sorted(FIXTURE_DOCS)}")
        return load_complex(FIXTURE_DOCS[args.fixture]())
    if not args.input:
        raise UsageError("give --input FILE or --fixture NAME")
    try:
        with open(args.input) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {args.input}: {e}") from None
    return load_complex(text)


def _nonneg(name, value):
    if value is None or value < 0:
        raise UsageError(f"--{name} must be a nonnegative integer")


def _confirm(space):
    res = oracle.check(space)
    if not res.ok:
        raise oracle.OracleMismatch(f"modular check failed: {res}")
    return res.exact, res.tag


def _facets_str(P, ids):
    return "".join(P.labels[i] for i in ids)


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(P, args, out):
    rep = validate_complex(P)
    counts = P.counts()
    data = {"kind": P.kind, "ambient_dim": P.n, "vertices": len(P.vertices), **counts,
            "pure": rep.pure, "hereditary": rep.hereditary, "manifold": rep.manifold_ok,
            "labels": list(P.labels)}
    lines = [f"{k}: {v}" for k, v in data.items() if k != "labels"]
    lines.append("labels: " + " ".join(P.labels))
    _emit(out, args.format, data, lines)


def cmd_lattice(P, args, out):
    L = arr.intersection_lattice(P, args.homogenized)
    if args.dot:
        out.write(L.to_dot())
        return
    flats = []
    for i, W in enumerate(L.flats):
        flats.append({"id": i, "rank": W.rank, "flat": str(W), "at_infinity": W.at_infinity,
                      "hyperplanes": [str(L.hyperplanes[j]) for j in L.incidence[i]]})
    lines = [f"hyperplanes: {len(L.hyperplanes)}",
             "rank counts: " + " ".join(map(str, L.rank_counts))]
    for f in flats:
        tag = " inf" if f["at_infinity"] else ""
        lines.append(f"{f['id']}\trank {f['rank']}\t{f['flat']}{tag}")
    data = {"homogenized": L.homogenized, "rank_counts": list(L.rank_counts),
            "hyperplanes": [str(h) for h in L.hyperplanes], "flats": flats,
            "covers": [list(c) for c in L.covers]}
    _emit(out, args.format, data, lines)


def _flat_by_id(P, args):
    L = arr.intersection_lattice(P, args.homogenized)
    if not 0 <= args.flat < len(L.flats):
        raise UsageError(f"unknown flat id {args.flat} (lattice has {len(L.flats)} flats)")
    return L.flats[args.flat]


def cmd_latcomplex(P, args, out):
    W = _flat_by_id(P, args)
    LC = arr.lattice_complex_for_flat(P, W)
    if args.dot:
        out.write(LC.to_dot())
        return
    labels = LC.labels()
    data = {"flat": str(W), "rank": W.rank, "components": labels}
    _emit(out, args.format, data, [f"flat {args.flat}: {W}", "components: " + " ".join(labels)])


def cmd_gamma(P, args, out):
    _nonneg("k", args.k)
    G = arr.gamma_poset(P, args.k, args.flats)
    if args.dot:
        out.write(G.to_dot())
        return
    rows = {k: [v.label for v in G.of_rank(k)] for k in range(args.k + 1)}
    maxi = [v.label for v in G.maximal()]
    lines = [f"rank {k}: " + " ".join(rows[k]) for k in rows]
    lines.append("rows: " + " ".join(map(str, G.row_sizes)))
    lines.append("maximal: " + " ".join(maxi))
    data = {"rows": list(G.row_sizes), "nodes": {str(k): v for k, v in rows.items()},
            "maximal": maxi, "edges": sorted([list(e) for e in G.label_edges()])}
    _emit(out, args.format, data, lines)


def cmd_dim(P, args, out):
    _nonneg("r", args.r)
    _nonneg("d", args.d)
    dim, tag = _confirm(spline_basis(P, args.r, args.d, args.mode))
    _emit(out, args.format, {"dim": dim, "oracle": tag, "r": args.r, "d": args.d,
                             "mode": args.mode}, [f"{dim} {tag}"])


def cmd_ls_dim(P, args, out):
    for name in ("r", "k", "d"):
        _nonneg(name, getattr(args, name))
    if args.k > P.n:
        raise UsageError(f"--k must be at most {P.n}")
    dim, tag = _confirm(ls_space(P, args.r, args.k, args.d, args.mode, args.flats))
    _emit(out, args.format, {"dim": dim, "oracle": tag, "r": args.r, "k": args.k,
                             "d": args.d, "flats": args.flats}, [f"{dim} {tag}"])


def _read_spline(P, path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    return parse_spline_doc(text, P)


def _pieces_json(pieces):
    return [[{"monomial": list(e), "coeff": rational_str(c)} for e, c in sorted(p.items())]
            for p in pieces]


def cmd_check(P, args, out):
    _nonneg("r", args.r)
    mode, pieces = _read_spline(P, args.spline)
    ok = is_spline(P, args.r, pieces, homogeneous=mode == "homogeneous")
    _emit(out, args.format, {"is_spline": ok, "r": args.r}, [f"is_spline: {str(ok).lower()}"])


def cmd_decompose(P, args, out):
    for name in ("r", "k", "d"):
        _nonneg(name, getattr(args, name))
    mode, pieces = _read_spline(P, args.spline)
    homog = mode == "homogeneous"
    if not is_spline(P, args.r, pieces, homogeneous=homog):
        raise UsageError(f"spline file is not a C^{args.r} spline on this complex")
    if any(p and (polys.degree(p) > args.d or (homog and polys.degree(p) != args.d))
           for p in pieces):
        raise UsageError(f"spline degree does not match --d {args.d}")
    dec = decompose(P, pieces, args.r, args.k, args.d, mode, args.flats)
    if dec is None:
        _emit(out, args.format, {"status": "not-in-ls", "summands": []},
              ["status: not-in-ls"])
        return
    # the pieces must add back up exactly
    total = [dict() for _ in range(P.num_facets)]
    for _, parts in dec.summands:
        for i, p in enumerate(parts):
            total[i] = polys.add(total[i], p)
    if any(not polys.equal(a, b) for a, b in zip(total, pieces)):
        raise AssertionError("decomposition does not sum to the input")
    names = polys.variable_names(P.n, homog)
    lines = ["status: ok", f"summands: {len(dec.summands)}"]
    data = {"status": "ok", "summands": []}
    for support, parts in dec.summands:
        label = _facets_str(P, support)
        lines.append(f"support {label}:")
        for i, p in enumerate(parts):
            if p:
                lines.append(f"  {P.labels[i]}: {polys.to_str(p, names)}")
        data["summands"].append({"support": label, "pieces": _pieces_json(parts)})
    _emit(out, args.format, data, lines)


def cmd_hf(P, args, out):
    _nonneg("r", args.r)
    dmax = args.dmax if args.dmax is not None else hilbert.default_dmax(P, args.r)
    try:
        sel = hilbert.Selector.parse(args.selector, P)
    except (ValueError, IndexError):
        raise UsageError(f"bad --selector {args.selector!r}") from None
    t = hilbert.hf_table(P, sel, args.r, dmax, check=True)
    fit = hilbert.hp_fit(t)
    lines = [f"{d} {v} ok" for d, v in enumerate(t.values)]
    lines.append(f"HP = {fit.to_str()}; agreement from {fit.agreement_from}"
                 + (" (window-limited)" if fit.window_limited else ""))
    data = {"selector": t.selector, "r": args.r, "values": list(t.values), "oracle": "ok",
            "hp": [str(c) for c in fit.coeffs], "agreement_from": fit.agreement_from,
            "window_limited": fit.window_limited}
    _emit(out, args.format, data, lines, t.to_csv())


def cmd_gendeg(P, args, out):
    _nonneg("r", args.r)
    dmax = args.dmax if args.dmax is not None else hilbert.default_dmax(P, args.r)
    g = hilbert.generator_degrees(P, args.r, dmax, check=True)
    lines = [f"{d} {v} ok" for d, v in enumerate(g.values)]
    lines.append("generator degrees: " + " ".join(map(str, g.degrees)))
    data = {"r": args.r, "values": list(g.values), "degrees": list(g.degrees),
            "max_degree": g.max_degree, "oracle": "ok"}
    _emit(out, args.format, data, lines, g.to_csv())


def cmd_report(P, args, out):
    _nonneg("r", args.r)
    rep = hilbert.conjecture_report(P, args.r, args.dmax)
    if args.format == "json":
        out.write(rep.to_json() + "\n")
    else:
        _emit(out, args.format, None, rep.lines())


def cmd_tn(args, out):
    if args.n is None or args.n < 2:
        raise UsageError("--n must be at least 2")
    out.write(json.dumps(tn_doc(args.n), sort_keys=True) + "\n")


def cmd_fixtures(args, out):
    if args.name:
        if args.name not in FIXTURE_DOCS:
            raise UsageError(f"unknown fixture {args.name!r}")
        docs = FIXTURE_DOCS[args.name]()
    else:
        docs = {k: complex_to_doc(load_complex(f())) for k, f in sorted(FIXTURE_DOCS.items())}
    out.write(json.dumps(docs, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splinetop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, *, complex_=True, fmt=True):
        s = sub.add_parser(name, help=help_)
        if complex_:
            s.add_argument("--input", help="complex document (JSON)")
            s.add_argument("--fixture", help="built-in complex instead of --input")
        if fmt:
            s.add_argument("--format", choices=("text", "json", "csv"), default="text")
        return s

    add("info", "face counts and validation")
    s = add("lattice", "intersection lattice of the interior walls")
    s.add_argument("--homogenized", action="store_true")
    s.add_argument("--dot", action="store_true")
    s = add("latcomplex", "components of the lattice complex of one flat")
    s.add_argument("--flat", type=int, required=True, help="flat id printed by `lattice`")
    s.add_argument("--homogenized", action="store_true")
    s.add_argument("--dot", action="store_true")
    s = add("gamma", "inclusion poset of lattice-complex components")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--flats", choices=arr.FLAT_KINDS, default=arr.HOMOGENIZED)
    s.add_argument("--dot", action="store_true")
    for name, extra in (("dim", False), ("ls-dim", True)):
        s = add(name, "spline space dimension" if not extra else "lattice-supported dimension")
        s.add_argument("--r", type=int, required=True)
        s.add_argument("--d", type=int, required=True)
        s.add_argument("--mode", choices=("filtered", "homogeneous"), default="filtered")
        if extra:
            s.add_argument("--k", type=int, required=True)
            s.add_argument("--flats", choices=arr.FLAT_KINDS, default=arr.HOMOGENIZED)
    s = add("check", "test a spline document for smoothness")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--spline", required=True)
    s = add("decompose", "split a spline into lattice-supported pieces")
    for name in ("r", "k", "d"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--spline", required=True)
    s.add_argument("--flats", choices=arr.FLAT_KINDS, default=arr.HOMOGENIZED)
    s = add("hf", "Hilbert function table on the cone")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--dmax", type=int)
    s.add_argument("--selector", default="full", help="full | ls[:k] | supported:LABELS")
    s = add("gendeg", "degrees of new module generators")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--dmax", type=int)
    s = add("report", "window-limited comparison with the regularity conjectures")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--dmax", type=int)
    s = add("tn", "emit the T_n complex document", complex_=False, fmt=False)
    s.add_argument("--n", type=int, required=True)
    s = add("fixtures", "emit built-in complex documents", complex_=False, fmt=False)
    s.add_argument("--name")
    return p


COMMANDS = {
    "info": cmd_info, "lattice": cmd_lattice, "latcomplex": cmd_latcomplex,
    "gamma": cmd_gamma, "dim": cmd_dim, "ls-dim": cmd_ls_dim, "check": cmd_check,
    "decompose": cmd_decompose, "hf": cmd_hf, "gendeg": cmd_gendeg, "report": cmd_report,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        if args.command == "tn":
            cmd_tn(args, out)
        elif args.command == "fixtures":
            cmd_fixtures(args, out)
        else:
            P = _complex(args)
            COMMANDS[args.command](P, args, out)
    except (UsageError, DocumentError, ComplexError, SplineError, arr.ArrangementError,
            hilbert.HilbertError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except (oracle.OracleMismatch, AssertionError) as e:
        err.write(f"contract violation: {e}\n")
        return EXIT_CONTRACT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
