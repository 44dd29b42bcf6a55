"""``nashgate`` command line.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 certificate not issued.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from nashgate import adjacency, euler_bound, milnor
from nashgate.catalog import CATALOG_VERSION, catalog_lookup, catalog_names, catalog_source
from nashgate.errors import NashgateError, ParseError
from nashgate.graph_core import (
    DualGraph,
    intersection_matrix,
    inverse_sign_report,
    is_negative_definite,
    minimality_audit,
    parse_document,
    serialize_graph,
)
from nashgate.report import dumps, make_report

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2
EXIT_NOT_ISSUED = 3

SCAN_CONVENTION = (
    "return vectors b with b_target = 0 and 1 <= sum(b) <= max_returns, at least one "
    "non-target return; ordered by sum(b), then lexicographically"
)


class UsageError(Exception):
    pass


def _load(args) -> tuple[DualGraph | milnor.EmbeddedResolutionData, str]:
    """Return the parsed input and its canonical text (hashed into the report)."""
    if args.catalog and args.path:
        raise UsageError("give either a file path or --catalog, not both")
    if args.catalog:
        obj = catalog_lookup(args.catalog)
    elif args.path:
        try:
            text = Path(args.path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
        doc = parse_document(text)
        obj = milnor.from_document(doc) if doc.strict else doc.graph
    else:
        raise UsageError("an input file or --catalog <name> is required")
    if isinstance(obj, milnor.EmbeddedResolutionData):
        return obj, milnor.serialize_embedded(obj)
    return obj, serialize_graph(obj)


def _graph_of(obj) -> DualGraph:
    return obj.exceptional if isinstance(obj, milnor.EmbeddedResolutionData) else obj


def _target(g: DualGraph, args) -> int:
    ref = args.target if args.target is not None else g.arc
    if ref is None:
        raise UsageError("no target: pass --target <component id> or declare 'arc <id>' in the graph")
    return g.index(ref)


def _uint_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated non-negative integers") from None
    if any(v < 0 for v in values):
        raise UsageError(f"{flag} expects non-negative integers")
    return values


# -- commands: each returns (payload, exit code) ------------------------------------

def cmd_validate(obj, args):
    g = _graph_of(obj)
    payload = {
        "kind": "embedded" if g is not obj else "graph",
        "name": g.name,
        "components": g.size,
        "edges": len(g.edges),
        "valid": True,
    }
    return payload, EXIT_OK


def cmd_analyze(obj, args):
    g = _graph_of(obj)
    m = intersection_matrix(g)
    definite = is_negative_definite(m)
    payload = {
        "graph": g.name,
        "components": list(g.ids),
        "matrix": m.entries,
        "negative_definite": definite.negative_definite,
        "minors": definite.minors,
        "witness": definite.witness,
        "inverse": None,
        "all_nonpositive": None,
        "offending_entries": [],
        "minimality_violations": [c.id for c in minimality_audit(g)],
    }
    if definite:
        signs = inverse_sign_report(m)
        payload["inverse"] = signs.inverse
        payload["all_nonpositive"] = signs.all_nonpositive
        payload["offending_entries"] = [{"i": i, "j": j, "value": v} for i, j, v in signs.offending_entries]
    return payload, EXIT_OK


def cmd_scan(obj, args):
    g = _graph_of(obj)
    t = _target(g, args)
    if args.max_returns < 1:
        raise UsageError("--max-returns must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    rep = adjacency.scan_adjacencies(g, t, args.max_returns, jobs=args.jobs)
    feasible = []
    for b, a in rep.feasible:
        fb = euler_bound.final_bound(g, a)
        feasible.append({"b": b, "a": a, "final_bound": fb, "verdict": euler_bound.verdict_for(fb)})
    payload = {
        "graph": rep.graph,
        "target": g.ids[rep.target],
        "max_returns": rep.max_returns,
        "convention": SCAN_CONVENTION,
        "total": rep.total,
        "counts": rep.counts,
        "feasible_count": len(rep.feasible),
        "excluded_target_return": rep.excluded_target_return,
        "feasible": feasible,
    }
    return payload, EXIT_OK


def cmd_bound(obj, args):
    g = _graph_of(obj)
    t = _target(g, args)
    if args.a is None:
        raise UsageError("bound needs --a <comma-separated uints>")
    a = _uint_list(args.a, "--a")
    returns_term = None
    if args.b is not None:
        returns_term = euler_bound.returns_term_from_b(a, _uint_list(args.b, "--b"))
    rep = euler_bound.bound_report(g, t, a, returns_term)
    topo = euler_bound.support_topology(g, t, a)
    payload = {
        "graph": g.name,
        "target": g.ids[t],
        "a": rep.a,
        "nu": topo.nu,
        "chi_dot": topo.chi_dot,
        "delta": topo.delta,
        "theta": [euler_bound.theta_term(g, t, a, i) for i in range(g.size)],
        "returns_bound": euler_bound.returns_bound(g, t, a),
        "returns_term": rep.returns_term,
        "refined_bound": rep.refined_bound,
        "terms": rep.terms,
        "final_bound": rep.final_bound,
        "verdict": rep.verdict,
    }
    return payload, EXIT_OK


def cmd_certificate(obj, args):
    g = _graph_of(obj)
    cert = euler_bound.certificate(g)
    payload = {
        "graph": cert.graph,
        "negative_definite": cert.negative_definite,
        "minimal": cert.minimal,
        "terms": cert.terms,
        "issued": cert.issued,
        "reasons": cert.reasons,
        "non_minimal_components": cert.non_minimal_components,
        "positive_term_components": cert.positive_term_components,
        "statement": cert.statement,
    }
    return payload, EXIT_OK if cert.issued else EXIT_NOT_ISSUED


def cmd_milnor(obj, args):
    if not isinstance(obj, milnor.EmbeddedResolutionData):
        raise UsageError("milnor needs embedded-resolution data (strict/mu/imult statements)")
    check = milnor.cross_check(obj)
    payload = {
        "dataset": obj.exceptional.name,
        "total_transform": milnor.total_transform(obj).a,
        "nu": milnor.exceptional_nu(obj),
        "chi_resolution": check.chi_resolution,
        "chi_branches": check.chi_branches,
        "consistent": check.consistent,
        "contact": args.contact,
        "local_deformation_bound": (
            milnor.local_deformation_bound(obj, args.contact) if args.contact is not None else None
        ),
    }
    return payload, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "scan": cmd_scan,
    "bound": cmd_bound,
    "certificate": cmd_certificate,
    "milnor": cmd_milnor,
}


# -- human-readable rendering ----------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, dict) and set(x) == {"num", "den"}:
        return str(x["num"]) if x["den"] == 1 else f"{x['num']}/{x['den']}"
    if isinstance(x, list):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    return str(x)


def render_text(report: dict) -> str:
    p = report["payload"]
    cmd = report["command"]
    lines = []
    if cmd == "validate":
        lines.append(f"{p['name']}: valid {p['kind']} ({p['components']} components, {p['edges']} edges)")
    elif cmd == "analyze":
        lines.append(f"graph {p['graph']}: components {', '.join(p['components'])}")
        lines += ["  M = ["] + [f"    {_fmt(row)}" for row in p["matrix"]] + ["  ]"]
        lines.append(f"  leading minors of -M: {_fmt(p['minors'])}")
        lines.append(f"  negative definite: {'yes' if p['negative_definite'] else 'no (minor %s)' % p['witness']}")
        if p["inverse"] is not None:
            lines += ["  M^-1 = ["] + [f"    {_fmt(row)}" for row in p["inverse"]] + ["  ]"]
            lines.append(f"  all entries of M^-1 <= 0: {'yes' if p['all_nonpositive'] else 'no'}")
        v = p["minimality_violations"]
        lines.append(f"  smooth rational (-1)-curves: {', '.join(v) if v else 'none'}")
    elif cmd == "scan":
        lines.append(f"scan {p['graph']} target={p['target']} max_returns={p['max_returns']}")
        lines.append(f"  candidates: {p['total']}")
        for k, v in p["counts"].items():
            lines.append(f"    {k}: {v}")
        lines.append(f"  excluded (target return with a source): {p['excluded_target_return']}")
        lines.append(f"  feasible: {p['feasible_count']}")
        for f in p["feasible"]:
            lines.append(f"    b={_fmt(f['b'])} a={_fmt(f['a'])} final_bound={f['final_bound']} {f['verdict']}")
    elif cmd == "bound":
        lines.append(f"bound {p['graph']} target={p['target']} a={_fmt(p['a'])}")
        for key in ("nu", "chi_dot", "theta", "terms"):
            lines.append(f"  {key}: {_fmt(p[key])}")
        lines.append(f"  returns term: {p['returns_term']} (substituted bound {p['returns_bound']})")
        lines.append(f"  refined bound: {p['refined_bound']}")
        lines.append(f"  final bound: {p['final_bound']} -> {p['verdict']}")
    elif cmd == "certificate":
        status = "ISSUED" if p["issued"] else "REFUSED (" + ", ".join(p["reasons"]) + ")"
        lines.append(f"certificate {p['graph']}: {status}")
        lines.append(f"  negative definite: {p['negative_definite']}, minimal: {p['minimal']}")
        lines.append(f"  terms t_i: {_fmt(p['terms'])}")
        if p["statement"]:
            lines.append(f"  {p['statement']}")
    elif cmd == "milnor":
        lines.append(f"milnor {p['dataset']}: total transform {_fmt(p['total_transform'])}")
        lines.append(f"  chi (resolution) = {p['chi_resolution']}, chi (branches) = {p['chi_branches']}")
        lines.append(f"  consistent: {'yes' if p['consistent'] else 'NO'}")
        if p["local_deformation_bound"] is not None:
            lines.append(f"  local deformation bound (contact {p['contact']}): {p['local_deformation_bound']}")
    elif cmd == "catalog":
        if "entries" in p:
            lines.append(f"catalog version {p['catalog_version']}")
            lines += [f"  {e['name']} ({e['kind']})" for e in p["entries"]]
        else:
            lines.append(p["document"].rstrip("\n"))
    return "\n".join(lines) + "\n"


def _catalog(args) -> tuple[dict, str]:
    if args.name is None:
        entries = [{"name": n, "kind": _kind(catalog_lookup(n))} for n in catalog_names()]
        return {"catalog_version": CATALOG_VERSION, "entries": entries}, "\n".join(catalog_names())
    obj = catalog_lookup(args.name)
    source = catalog_source(args.name)
    return {"catalog_version": CATALOG_VERSION, "name": args.name, "kind": _kind(obj), "document": source}, source


def _kind(obj) -> str:
    return "embedded" if isinstance(obj, milnor.EmbeddedResolutionData) else "graph"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nashgate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", nargs="?", help="graph document (.sdg)")
        p.add_argument("--catalog", metavar="NAME", help="use a built-in dataset instead of a file")
        p.add_argument("--json", action="store_true", help="emit the machine-readable report")
        return p

    add("validate", "parse and validate a graph document")
    add("analyze", "intersection matrix, definiteness, inverse signs, minimality audit")
    p = add("scan", "enumerate return vectors and rule out adjacencies")
    p.add_argument("--target", metavar="ID")
    p.add_argument("--max-returns", type=int, default=adjacency.DEFAULT_MAX_RETURNS)
    p.add_argument("--jobs", type=int, default=1)
    p = add("bound", "refined and final Euler characteristic bounds for a given a")
    p.add_argument("--target", metavar="ID")
    p.add_argument("--a", metavar="A0,A1,...")
    p.add_argument("--b", metavar="B0,B1,...", help="explicit returns instead of the substituted bound")
    add("certificate", "issue or refuse the no-adjacency certificate")
    p = add("milnor", "Milnor fibre Euler characteristic cross-check")
    p.add_argument("--contact", type=int, default=None)
    p = sub.add_parser("catalog", help="list built-in datasets or print one")
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")
    return parser


def _diagnose(exc: Exception) -> str:
    if isinstance(exc, ParseError) and exc.line is not None:
        where = f"line {exc.line}" + (f", column {exc.column}" if exc.column is not None else "")
        return f"error: {exc.code}: {exc.message} ({where})"
    if isinstance(exc, NashgateError):
        return f"error: {exc.code}: {exc.message}"
    return f"error: USAGE: {exc}"


def run(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            payload, canonical = _catalog(args)
            code = EXIT_OK
        else:
            obj, canonical = _load(args)
            if args.command == "milnor" and args.contact is not None and args.contact < 0:
                raise UsageError("--contact must be non-negative")
            payload, code = COMMANDS[args.command](obj, args)
    except (NashgateError, UsageError) as exc:
        print(_diagnose(exc), file=stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001 - exit-code contract
        print(f"error: INTERNAL: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    report = make_report(args.command, canonical, payload)
    stdout.write(dumps(report) if args.json else render_text(report))
    return code


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
