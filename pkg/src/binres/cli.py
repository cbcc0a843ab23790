"""Command line front end: problem files in, JSON traces and DOT graphs out.

Exit status: 0 resolved, 1 malformed input, 2 a check failed, 3 the step
budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .blowup import BlowUpRecord
from .core import (
    Binomial,
    Chart,
    Coefficient,
    Q,
    ZeroGenerator,
    normalize_binomial,
)
from .gamma import GammaValue
from .resolver import (
    GAMMA,
    INF,
    RAT,
    BBOE,
    CheckFailure,
    Node,
    TComponent,
    TValue,
    check_edge,
    evaluate,
    expand,
    resolve,
    root_bboe,
)

PROBLEM_SCHEMA = "binres.problem/1"
TRACE_SCHEMA = "binres.trace/1"

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    """Malformed problem file; the message starts with the offending position."""


# numbers ---------------------------------------------------------------------


def dump_number(x):
    """Integers stay JSON integers; anything else becomes ``"num/den"``."""
    if isinstance(x, int):
        return x
    x = Q(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def load_number(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: expected an integer or a 'num/den' string, got {x!r}")
    if isinstance(x, int):
        return x
    try:
        q = Q(x.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot read {x!r} as a rational") from None
    return int(q) if q.denominator == 1 else q


# problem files ------------------------------------------------------------------


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


def _int(x, where: str, low=None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    if low is not None and x < low:
        raise InputError(f"{where}: must be >= {low}")
    return x


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def parse_problem(data) -> dict:
    """Validate a decoded problem file and build the root basic object."""
    if not isinstance(data, dict):
        raise InputError("$: expected a JSON object")
    schema = data.get("schema", PROBLEM_SCHEMA)
    if schema != PROBLEM_SCHEMA:
        raise InputError(f"$.schema: unsupported schema {schema!r}")
    p = _int(_require(data, "characteristic", "$"), "$.characteristic", 0)
    if p and not _is_prime(p):
        raise InputError("$.characteristic: must be 0 or a prime")
    n = _int(_require(data, "num_vars", "$"), "$.num_vars", 1)
    inv = data.get("invertible", [])
    if not isinstance(inv, list):
        raise InputError("$.invertible: expected a list")
    invertible = set()
    for k, v in enumerate(inv):
        v = _int(v, f"$.invertible[{k}]", 1)
        if v > n:
            raise InputError(f"$.invertible[{k}]: variable {v} out of range 1..{n}")
        invertible.add(v)
    c = _require(data, "control", "$")
    if isinstance(c, bool) or not isinstance(c, int):
        raise InputError(f"$.control: expected an integer, got {c!r}")
    if c < 1:
        raise InputError("$.control: control must be ≥ 1")
    gens_in = _require(data, "generators", "$")
    if not isinstance(gens_in, list) or not gens_in:
        raise InputError("$.generators: expected a nonempty list")
    gens = []
    for k, g in enumerate(gens_in):
        where = f"$.generators[{k}]"
        if not isinstance(g, dict):
            raise InputError(f"{where}: expected an object")
        exps = []
        for side in ("plus", "minus"):
            e = _require(g, side, where)
            if not isinstance(e, list) or len(e) != n:
                raise InputError(f"{where}.{side}: expected a list of {n} exponents")
            e = tuple(_int(a, f"{where}.{side}[{i}]") for i, a in enumerate(e))
            for i, a in enumerate(e):
                if a < 0 and i + 1 not in invertible:
                    raise InputError(f"{where}.{side}[{i}]: negative exponent on x{i + 1}")
            exps.append(e)
        coeffs = [
            Coefficient(load_number(g.get(name, 1), f"{where}.{name}"), p)
            for name in ("plus_coeff", "minus_coeff")
        ]
        try:
            gens.append(normalize_binomial(exps[0], exps[1], coeffs[0], coeffs[1], invertible))
        except ZeroGenerator:
            raise InputError(f"{where}: the generator is zero") from None
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise InputError("$.options: expected an object")
    chart = Chart(n, frozenset(invertible), p=p)
    return {"bboe": root_bboe(chart, gens, c), "options": options, "raw": data}


def read_problem(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise InputError(f"{path}: {err.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from None
    return parse_problem(data)


# serialization --------------------------------------------------------------------


def dump_vector(e) -> list:
    return [dump_number(a) for a in e]


def dump_generator(f: Binomial) -> dict:
    return {
        "kind": f.kind,
        "nu": dump_vector(f.nu),
        "alpha": dump_vector(f.alpha),
        "beta": dump_vector(f.beta),
        "gamma": dump_vector(f.gamma),
        "delta": dump_vector(f.delta),
        "coeff": None if f.coeff is None else dump_number(f.coeff.value),
        "weight": dump_number(f.weight),
        "text": str(f),
    }


def load_generator(d: dict, p: int) -> Binomial:
    vec = {k: tuple(load_number(a, k) for a in d[k]) for k in ("nu", "alpha", "beta", "gamma", "delta")}
    coeff = None if d["coeff"] is None else Coefficient(load_number(d["coeff"], "coeff"), p)
    return Binomial(d["kind"], vec["nu"], vec["alpha"], vec["beta"], vec["gamma"], vec["delta"], coeff, Q(load_number(d["weight"], "weight")))


def dump_component(comp: TComponent) -> dict:
    if comp.tag == INF:
        return {"tag": INF}
    if comp.tag == RAT:
        return {"tag": RAT, "q": dump_number(comp.q)}
    g = comp.g
    return {"tag": GAMMA, "g": [g.g1, dump_number(g.g2), list(g.g3)]}


def load_component(d: dict) -> TComponent:
    if d["tag"] == INF:
        return TComponent(INF)
    if d["tag"] == RAT:
        return TComponent(RAT, q=Q(load_number(d["q"], "q")))
    g1, g2, g3 = d["g"]
    return TComponent(GAMMA, g=GammaValue(g1, Q(load_number(g2, "g")), tuple(g3)))


def dump_tvalue(t: TValue | None):
    return None if t is None else [dump_component(c) for c in t.components]


def load_tvalue(d) -> TValue | None:
    return None if d is None else TValue(tuple(load_component(c) for c in d))


def dump_chart(ch: Chart) -> dict:
    return {
        "n": ch.n,
        "invertible": sorted(ch.invertible),
        "H": sorted([v, b] for v, b in ch.H),
        "D": [[[v, dump_number(m)] for v, m in dv] for dv in ch.D],
        "history": [[j, list(center)] for j, center in ch.history],
        "characteristic": ch.p,
    }


def load_chart(d: dict) -> Chart:
    return Chart(
        d["n"],
        frozenset(d["invertible"]),
        frozenset((v, b) for v, b in d["H"]),
        tuple(tuple((v, Q(load_number(m, "D"))) for v, m in dv) for dv in d["D"]),
        tuple((j, tuple(center)) for j, center in d["history"]),
        d["characteristic"],
    )


def _strata(node: Node) -> list:
    return [sorted(s) for s in node.strata] if node.singular else []


def dump_node(node: Node) -> dict:
    b = node.bboe
    rec = node.record
    return {
        "id": node.id,
        "parent": node.parent,
        "depth": node.depth,
        "substitution": None if rec is None else {"center": sorted(rec.center), "chart_var": rec.j, "stage": rec.stage},
        "chart": dump_chart(b.chart),
        "generators": [dump_generator(f) for f in b.J],
        "control": b.c,
        "stage": b.stage,
        "reference": {
            "t": dump_tvalue(b.ref_t),
            "k0": list(b.ref_k0),
            "contacts": list(b.ref_contacts),
        },
        "H_per_dimension": [sorted([v, s] for v, s in h) for h in node.H_dims],
        "esing_minimal": _strata(node),
        "t_max": dump_tvalue(node.t_max),
        "center": None if node.center is None else sorted(node.center),
        "expanded": node.expanded,
        "children": list(node.children),
    }


def trace_document(tree, problem_raw: dict, status: str) -> dict:
    return {
        "schema": TRACE_SCHEMA,
        "problem": problem_raw,
        "status": status,
        "summary": {"nodes": len(tree.nodes), "depth": tree.depth, "blowups": tree.blowups},
        "nodes": [dump_node(v) for v in tree.nodes],
    }


def write_json(doc: dict, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, ensure_ascii=False, sort_keys=False)
        fh.write("\n")


def dot_document(tree) -> str:
    lines = ["digraph resolution {", "  node [shape=box, fontname=monospace];"]
    for v in tree.nodes:
        label = f"{v.id}: {v.t_max}" if v.t_max is not None else f"{v.id}: resolved"
        lines.append(f'  n{v.id} [label="{label}"];')
    for up, v in tree.edges():
        center = ",".join(str(i) for i in sorted(v.record.center))
        lines.append(f'  n{up.id} -> n{v.id} [label="x{v.record.j} / {{{center}}}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# trace verification --------------------------------------------------------------


def load_bboe(d: dict) -> BBOE:
    chart = load_chart(d["chart"])
    ref = d["reference"]
    return BBOE(
        chart,
        tuple(load_generator(g, chart.p) for g in d["generators"]),
        d["control"],
        d["stage"],
        load_tvalue(ref["t"]),
        tuple(ref["k0"]),
        tuple(ref["contacts"]),
    )


def verify_trace(doc: dict) -> list:
    """Rebuild every node of a trace and re-check it; returns the problems found."""
    if doc.get("schema") != TRACE_SCHEMA:
        return [f"unsupported trace schema {doc.get('schema')!r}"]
    issues = []
    nodes = {}
    for d in doc["nodes"]:
        b = load_bboe(d)
        rec = None
        if d["substitution"] is not None:
            s = d["substitution"]
            rec = BlowUpRecord(frozenset(s["center"]), s["chart_var"], s["stage"])
        node = Node(d["id"], d["parent"], b, rec, d["depth"], ())
        evaluate(node)
        stored = load_tvalue(d["t_max"])
        if stored != node.t_max:
            issues.append(f"node {node.id}: stored t {stored} but recomputed {node.t_max}")
        if d["center"] is not None and (node.center is None or sorted(node.center) != d["center"]):
            issues.append(f"node {node.id}: stored center {d['center']} differs")
        nodes[node.id] = (node, d)
    for node, d in nodes.values():
        if not d["expanded"]:
            continue
        # each stored child must be what the blow-up produces
        kids = expand(node, node.bboe.stage + 1)
        if len(kids) != len(d["children"]):
            issues.append(f"node {node.id}: expected {len(kids)} children, trace has {len(d['children'])}")
            continue
        for (child_b, _), cid in zip(kids, d["children"]):
            child = nodes[cid][0]
            if child_b != child.bboe:
                issues.append(f"node {cid}: stored chart or ideal differs from the blow-up of node {node.id}")
            if child.singular:
                try:
                    check_edge(node, child, "full")
                except CheckFailure as err:
                    issues.append(str(err))
    return issues


# entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="binres", description="Resolve binomial basic objects by combinatorial blow-ups.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("resolve", help="resolve a problem file and write its trace")
    r.add_argument("--input", required=True, help="problem file (JSON)")
    r.add_argument("--trace", required=True, help="where to write the trace (JSON)")
    r.add_argument("--dot", help="also write the chart tree as a DOT graph")
    r.add_argument("--max-steps", type=int, help="blow-up budget (default 10000)")
    r.add_argument("--check", choices=["none", "fast", "full"], help="check level (default fast)")
    r.add_argument("--traversal", choices=["dfs", "bfs"], help="chart order (default dfs)")
    v = sub.add_parser("verify", help="re-check every node and edge of a trace")
    v.add_argument("--trace", required=True)
    return ap


def _option(cli_value, options: dict, key: str, default, allowed=None):
    value = cli_value if cli_value is not None else options.get(key, default)
    if allowed is not None and value not in allowed:
        raise InputError(f"$.options.{key}: expected one of {', '.join(allowed)}")
    return value


def cmd_resolve(args, out, err) -> int:
    try:
        prob = read_problem(args.input)
        opts = prob["options"]
        max_steps = _option(args.max_steps, opts, "max_steps", 10000)
        if isinstance(max_steps, bool) or not isinstance(max_steps, int) or max_steps < 1:
            raise InputError("$.options.max_steps: must be an integer >= 1")
        check = _option(args.check, opts, "check_level", "fast", ("none", "fast", "full"))
        traversal = _option(args.traversal, opts, "traversal", "dfs", ("dfs", "bfs"))
    except InputError as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    t0 = time.perf_counter()
    try:
        tree = resolve(prob["bboe"], max_steps=max_steps, check_level=check, traversal=traversal)
        status, code = ("exhausted", EXIT_BUDGET) if tree.exhausted else ("resolved", EXIT_OK)
    except CheckFailure as e:
        tree = e.tree
        status, code = "check-failed", EXIT_CHECK
        print(f"check failed: {e}", file=err)
    elapsed = time.perf_counter() - t0
    doc = trace_document(tree, prob["raw"], status)
    write_json(doc, args.trace)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_document(tree))
    print(
        f"{status}: nodes={len(tree.nodes)} depth={tree.depth} blowups={tree.blowups} elapsed={elapsed:.3f}s",
        file=out,
    )
    return code


def cmd_verify(args, out, err) -> int:
    try:
        with open(args.trace, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {args.trace}: {e}", file=err)
        return EXIT_INPUT
    issues = verify_trace(doc)
    for msg in issues:
        print(msg, file=err)
    print(f"verified {len(doc['nodes'])} nodes: {'ok' if not issues else f'{len(issues)} problems'}", file=out)
    return EXIT_CHECK if issues else EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "resolve":
        return cmd_resolve(args, out, err)
    return cmd_verify(args, out, err)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
