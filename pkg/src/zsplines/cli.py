"""Command-line front end.

    zsplines components GRAPH --mod Q
    zsplines gens GRAPH [--mod M] [--paper-order]
    zsplines rank GRAPH [--mod M]
    zsplines basis-z GRAPH [--reduce]
    zsplines multable GRAPH [--mod M]
    zsplines classes GRAPH [--mod M]
    zsplines verify GRAPH [--mod M] [--generators GENS.json] [--budget N]

Every subcommand accepts ``--format text|json``.  Exit status is 0 on
success, 1 when a computation fails (or a verification check fails) and
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle
from .arith import factorize
from .errors import ContextMismatch, MalformedDocument, SplineError
from .graph import EdgeLabeledGraph, parse_graph, reduce_labels, zero_components
from .ring import GeneralCombination, MultiplicationTable, ScalarMultiple, Zero, multiplication_table
from .splines import (
    GeneratingSet,
    Generator,
    Spline,
    forced_equal_classes,
    gens_mod_m,
    gens_mod_prime_power,
    integer_basis,
    is_spline,
    rank,
    reduce_integer_basis,
)

SCHEMA = 1


class UsageError(Exception):
    pass


# -- serialization ---------------------------------------------------------

def generator_to_dict(g: EdgeLabeledGraph, gen: Generator) -> dict:
    lead = gen.leading_vertex
    return {
        "values": gen.spline.as_dict(g),
        "leading_vertex": None if lead is None else g.name(lead),
        "constant_value": gen.constant_value,
        "level": gen.level,
    }


def gens_to_dict(g: EdgeLabeledGraph, basis: GeneratingSet, **extra) -> dict:
    doc = {"schema": SCHEMA}
    if basis.modulus is None:
        doc["mode"] = "integers"
    else:
        doc["modulus"] = basis.modulus
    doc.update(extra)
    doc["rank"] = len(basis)
    doc["generators"] = [generator_to_dict(g, gen) for gen in basis]
    return doc


def load_generating_set(doc: dict, g: EdgeLabeledGraph) -> GeneratingSet:
    """Rebuild a generating set from the JSON written by ``gens``."""
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA or "generators" not in doc:
        raise MalformedDocument(f"expected a schema-{SCHEMA} generators document")
    modulus = doc.get("modulus")
    gens = []
    for item in doc["generators"]:
        values = item["values"]
        if set(values) != set(g.vertices):
            raise MalformedDocument("generator vertices do not match the graph")
        spline = Spline(tuple(values[name] for name in g.vertices), modulus)
        gens.append(Generator(spline, item.get("level")))
    return GeneratingSet(tuple(gens), modulus)


def entry_to_dict(entry) -> dict:
    if isinstance(entry, Zero):
        return {"type": "zero"}
    if isinstance(entry, ScalarMultiple):
        return {"type": "scalar", "coefficient": entry.coefficient, "generator": entry.index + 1}
    return {"type": "combination", "coefficients": list(entry.coefficients)}


def entry_to_text(entry) -> str:
    if isinstance(entry, Zero):
        return "0"
    if isinstance(entry, ScalarMultiple):
        c = entry.coefficient
        return f"b{entry.index + 1}" if c == 1 else f"{c}*b{entry.index + 1}"
    assert isinstance(entry, GeneralCombination)
    terms = [
        f"b{i + 1}" if c == 1 else f"{c}*b{i + 1}"
        for i, c in enumerate(entry.coefficients)
        if c
    ]
    return " + ".join(terms)


def spline_text(g: EdgeLabeledGraph, s: Spline, paper_order: bool) -> str:
    if paper_order:
        return "(" + " ".join(str(x) for x in reversed(s.values)) + ")^T"
    return " ".join(f"{g.name(i)}={x}" for i, x in enumerate(s.values))


def gens_text(g: EdgeLabeledGraph, basis: GeneratingSet, paper_order: bool, title: str) -> str:
    lines = [title]
    rows = [("", "leading", "const", "level", "values")]
    for k, gen in enumerate(basis):
        lead = gen.leading_vertex
        rows.append((
            f"b{k + 1}",
            "-" if lead is None else g.name(lead),
            "-" if gen.constant_value is None else str(gen.constant_value),
            "-" if gen.level is None else str(gen.level),
            spline_text(g, gen.spline, paper_order),
        ))
    widths = [max(len(r[c]) for r in rows) for c in range(4)]
    for r in rows:
        lines.append("  " + "  ".join(r[c].ljust(widths[c]) for c in range(4)) + "  " + r[4])
    return "\n".join(line.rstrip() for line in lines)


# -- subcommands -------------------------------------------------------------

def _modulus(args, g: EdgeLabeledGraph) -> int:
    if args.mod is not None:
        if args.mod < 2:
            raise UsageError("--mod must be at least 2")
        return args.mod
    if g.modulus is None:
        raise UsageError(f"'{args.command}' on an integer graph needs --mod")
    return g.modulus


def _graph_mod(g: EdgeLabeledGraph, m: int) -> EdgeLabeledGraph:
    return g if g.modulus == m else reduce_labels(g, m)


def cmd_components(args, g):
    q = _modulus(args, g)
    gq = _graph_mod(g, q)
    part = zero_components(gq)
    doc = {
        "schema": SCHEMA,
        "modulus": q,
        "labels": {f"{g.name(e.u)}-{g.name(e.v)}": lab for e, lab in zip(gq.edges, gq.ideal_generators())},
        "components": [
            {"index": g.name(c[0]), "vertices": [g.name(v) for v in c]} for c in part
        ],
    }
    text = [f"zero-connected components mod {q}: {len(part)}"]
    for c in part:
        text.append(f"  V({g.name(c[0])}) = {{{', '.join(g.name(v) for v in c)}}}")
    return doc, "\n".join(text)


def cmd_gens(args, g):
    m = _modulus(args, g)
    fac = factorize(m)
    gm = _graph_mod(g, m)
    if fac.is_prime_power:
        (p, e), = fac.factors
        basis = gens_mod_prime_power(gm, p, e)
    else:
        basis = gens_mod_m(gm, m)
    doc = gens_to_dict(g, basis)
    text = gens_text(g, basis, args.paper_order, f"flow-up minimum generating set mod {m} (rank {len(basis)})")
    return doc, text


def cmd_rank(args, g):
    m = _modulus(args, g)
    gm = _graph_mod(g, m)
    factors = []
    for p, e in factorize(m):
        count = len(zero_components(reduce_labels(gm, p**e)))
        factors.append({"prime": p, "exponent": e, "components": count})
    r = rank(gm, m)
    doc = {"schema": SCHEMA, "modulus": m, "rank": r, "factors": factors}
    text = [f"rank mod {m}: {r}"]
    for f in factors:
        text.append(f"  mod {f['prime']}^{f['exponent']}: {f['components']} zero-connected components")
    return doc, "\n".join(text)


def cmd_basis_z(args, g):
    if g.modulus is not None:
        raise ContextMismatch("basis-z needs a graph in mode 'integers'")
    basis = integer_basis(g)
    if args.reduce:
        basis = reduce_integer_basis(basis)
    doc = gens_to_dict(g, basis, reduced=bool(args.reduce))
    title = f"flow-up basis over Z ({len(basis)} elements{', reduced' if args.reduce else ''})"
    return doc, gens_text(g, basis, args.paper_order, title)


def table_doc(g: EdgeLabeledGraph, table: MultiplicationTable) -> dict:
    doc = gens_to_dict(g, table.generators, kind=table.kind)
    doc["entries"] = [[entry_to_dict(e) for e in row] for row in table.entries]
    return doc


def cmd_multable(args, g):
    m = _modulus(args, g)
    gm = _graph_mod(g, m)
    table = multiplication_table(gens_mod_m(gm, m))
    doc = table_doc(g, table)
    basis = table.generators
    text = [gens_text(g, basis, args.paper_order, f"generators mod {m}"), "", f"multiplication table ({table.kind}):"]
    cells = [[entry_to_text(e) for e in row] for row in table.entries]
    head = [""] + [f"b{j + 1}" for j in range(len(basis))]
    grid = [head] + [[f"b{i + 1}"] + row for i, row in enumerate(cells)]
    widths = [max(len(r[c]) for r in grid) for c in range(len(head))]
    for r in grid:
        text.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    return doc, "\n".join(text)


def cmd_classes(args, g):
    m = _modulus(args, g)
    classes = forced_equal_classes(_graph_mod(g, m), m)
    doc = {"schema": SCHEMA, "modulus": m, "classes": [[g.name(v) for v in c] for c in classes]}
    text = [f"forced-equal vertex classes mod {m}: {len(classes)}"]
    for c in classes:
        text.append("  {" + ", ".join(g.name(v) for v in c) + "}")
    return doc, "\n".join(text)


def run_checks(g: EdgeLabeledGraph, m: int, basis: GeneratingSet, budget: int) -> list[dict]:
    """Oracle checks of a generating set over ``Z/mZ``; one dict per check."""
    gm = _graph_mod(g, m)
    checks = []

    def record(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    record("modulus", basis.modulus == m, f"generators over {basis.modulus}, graph over {m}")
    if basis.modulus != m:
        return checks
    bad = [k + 1 for k, s in enumerate(basis.splines) if not is_spline(gm, s)]
    record("is_spline", not bad, f"non-splines: {bad}" if bad else "all generators are splines")
    leads = basis.leading_vertices
    flow_up = None not in leads and list(leads) == sorted(set(leads))
    record("flow_up", flow_up, f"leading vertices {[None if v is None else g.name(v) for v in leads]}")
    r = rank(gm, m)
    record("rank", len(basis) == r, f"{len(basis)} generators, rank {r}")

    everything = oracle.enumerate_splines(gm, m, budget)
    spanned = oracle.span_mod_m(basis, m, budget)
    record("span", spanned == everything, f"span {len(spanned)} of {len(everything)} splines")
    if len(basis) > 1:
        shorter = GeneratingSet(basis.generators[:-1], m)
        record("prefix_not_generating", oracle.span_mod_m(shorter, m, budget) != everything,
               "dropping the last generator loses splines")

    for p, e in factorize(m):
        q = p**e
        part = gens_mod_prime_power(gm, p, e)
        record(f"bt_criteria_mod_{q}", oracle.check_bt_criteria(part), f"{len(part)} generators mod {q}")
        reduced_ok = all(Spline(s.values, q) in oracle.span_mod_m(part, q, budget) for s in basis.splines)
        record(f"crt_roundtrip_mod_{q}", reduced_ok, f"generators reduced mod {q} lie in the mod-{q} span")

    classes = forced_equal_classes(gm, m)
    truth = oracle.agreement_classes(everything, g.n)
    record("forced_equal_classes", classes == truth, f"{len(classes)} classes")
    return checks


def cmd_verify(args, g):
    m = _modulus(args, g)
    if args.generators:
        doc = _read_json(args.generators)
        basis = load_generating_set(doc, g)
    else:
        basis = gens_mod_m(_graph_mod(g, m), m)
    checks = run_checks(g, m, basis, args.budget)
    ok = all(c["passed"] for c in checks)
    doc = {"schema": SCHEMA, "modulus": m, "passed": ok, "checks": checks}
    text = [f"verification mod {m}: {'PASS' if ok else 'FAIL'}"]
    for c in checks:
        text.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}: {c['detail']}")
    return doc, "\n".join(text), (0 if ok else 1)


COMMANDS = {
    "components": cmd_components,
    "gens": cmd_gens,
    "rank": cmd_rank,
    "basis-z": cmd_basis_z,
    "multable": cmd_multable,
    "classes": cmd_classes,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsplines",
        description="Generalized splines on edge-labeled graphs over Z/mZ and Z.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("graph", help="graph JSON file ('-' for stdin)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--paper-order", action="store_true",
                       help="print splines as column vectors, highest vertex first")
        if name != "basis-z":
            p.add_argument("--mod", type=int, default=None)
        if name == "basis-z":
            p.add_argument("--reduce", action="store_true")
        if name == "verify":
            p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
            p.add_argument("--generators", default=None,
                           help="verify a generating set written by 'gens --format json'")
    return parser


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path}: invalid JSON: {exc}") from None


def _emit_error(fmt: str, code: str, message: str) -> None:
    if fmt == "json":
        print(json.dumps({"schema": SCHEMA, "error": {"code": code, "message": message}}))
    else:
        print(f"error [{code}]: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        g = parse_graph(_read_text(args.graph))
        result = COMMANDS[args.command](args, g)
    except UsageError as exc:
        _emit_error(args.format, "UsageError", str(exc))
        return 2
    except SplineError as exc:
        _emit_error(args.format, exc.code, str(exc))
        return 1
    doc, text, status = result if len(result) == 3 else (*result, 0)
    print(json.dumps(doc, indent=2) if args.format == "json" else text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
