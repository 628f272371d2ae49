"""Command-line surface: deterministic JSON/text reports over all modules."""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from itertools import product

from . import dag as dagmod
from . import dkk as dkkmod
from . import equatorial as eqmod
from . import geometry as geo
from . import planar as plmod
from . import quotient as qmod
from . import routes as rmod

OK, FAILED, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> dagmod.Dag:
    try:
        dag = dagmod.dag_from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph file {path}: {exc}") from exc
    report = dagmod.validate(dag)
    if not report.ok:
        raise InputError("invalid graph: " + "; ".join(report.violations))
    return dag


def _load_decomposition(dag: dagmod.Dag, path: str | None) -> tuple[rmod.Route, ...]:
    if path is None:
        return rmod.route_decomposition(dag)
    data = _load_json(path)
    decomp = tuple(tuple(r) for r in data)
    if not rmod.is_route_decomposition(dag, decomp):
        raise InputError(f"{path} is not a route decomposition of the graph")
    return decomp


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return

    def render(value, indent: str = "") -> None:
        if isinstance(value, dict):
            for k in sorted(value):
                v = value[k]
                if isinstance(v, (dict, list)):
                    print(f"{indent}{k}:")
                    render(v, indent + "  ")
                else:
                    print(f"{indent}{k}: {v}")
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, (dict, list)):
                    render(v, indent + "  ")
                else:
                    print(f"{indent}- {v}")

    render(report)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_analyze(args) -> tuple[dict, int]:
    dag = _load_graph(args.graph)
    report: dict = {"command": "analyze", "digest": _digest(args.graph)}
    try:
        contracted, mapping = dagmod.contract_idle_edges(dag)
        report["contraction"] = {
            "edges_removed": len(dag.edges) - len(contracted.edges),
            "edge_map": {k: v for k, v in sorted(mapping.items())},
        }
    except ValueError:
        report["contraction"] = "graph contracts to a single edge-free point"
    report["degree_equality"] = dagmod.degree_equality(dag)
    report["dimension"] = dagmod.dimension(dag)
    report["routes"] = len(rmod.enumerate_routes(dag))
    hs = geo.ehrhart_hstar(dag)
    report["ehrhart"] = hs.to_json()
    return report, OK


def cmd_decompose(args) -> tuple[dict, int]:
    dag = _load_graph(args.graph)
    report: dict = {"command": "decompose", "digest": _digest(args.graph)}
    try:
        decomp = rmod.route_decomposition(dag)
    except rmod.NotGorensteinError as exc:
        report["error"] = str(exc)
        return report, FAILED
    report["decomposition"] = [list(r) for r in decomp]
    report["size"] = len(decomp)
    report["outdeg_source"] = dag.outdeg(0)
    return report, OK


def cmd_dkk(args) -> tuple[dict, int]:
    dag = _load_graph(args.graph)
    report: dict = {"command": "dkk", "digest": _digest(args.graph)}
    try:
        decomp = _load_decomposition(dag, args.decomposition)
    except rmod.NotGorensteinError as exc:
        report["error"] = str(exc)
        return report, FAILED
    framing = rmod.decomposition_framing(dag, decomp)
    tri = dkkmod.dkk_triangulation(dag, framing)
    report["routes"] = len(tri.labels)
    report["simplices"] = [[list(tri.labels[i]) for i in s] for s in tri.simplices]
    report["exceptional_routes"] = [list(r)
                                    for r in dkkmod.exceptional_routes(dag, framing)]
    check = geo.verify_triangulation(tri, dagmod.dimension(dag),
                                     geo.normalized_volume(dag))
    report["triangulation_ok"] = check.ok
    report["issues"] = list(check.issues)
    return report, OK if check.ok else FAILED


def cmd_equatorial(args) -> tuple[dict, int]:
    dag = _load_graph(args.graph)
    report: dict = {"command": "equatorial", "digest": _digest(args.graph)}
    try:
        decomp = _load_decomposition(dag, args.decomposition)
    except rmod.NotGorensteinError as exc:
        report["error"] = str(exc)
        return report, FAILED
    report["decomposition"] = [list(r) for r in decomp]
    facets = eqmod.equatorial_facets(dag, decomp)
    routes = rmod.enumerate_routes(dag)
    report["facets"] = [{"transversal": list(f.transversal),
                         "routes": [list(routes[i]) for i in sorted(f.routes)]}
                        for f in facets]
    sphere = eqmod.t_eq(dag, decomp)
    report["sphere"] = {
        "maximal_faces": [[list(routes[i]) for i in f] for f in sphere.maximal_faces],
        "f_vector": list(geo.f_vector(sphere)),
        "euler_characteristic": sphere.euler_characteristic(),
    }
    tri = eqmod.equatorial_flow_triangulation(dag, decomp)
    report["simplices"] = [[list(routes[i]) for i in s] for s in tri.simplices]
    h = geo.h_polynomial(tri.complex)
    hs = geo.ehrhart_hstar(dag)
    report["h_vector"] = list(h)
    report["h_star"] = list(hs.h_star)
    report["h_equals_h_star"] = list(h) == [c for c in hs.h_star[:len(h)]] and \
        all(c == 0 for c in hs.h_star[len(h):])
    code = OK if report["h_equals_h_star"] else FAILED
    if args.exhaustive_dkk:
        cmp = eqmod.differs_from_dkk(dag, decomp, exhaustive=True)
        report["dkk_comparison"] = {
            "framings_checked": cmp.framings_checked,
            "matching_framings": len(cmp.matching_framings),
            "verdict": ("is a DKK triangulation" if cmp.is_dkk
                        else "not a DKK triangulation for any framing"),
        }
    return report, code


def cmd_quotient(args) -> tuple[dict, int]:
    dag = _load_graph(args.graph)
    report: dict = {"command": "quotient", "digest": _digest(args.graph)}
    try:
        decomp = _load_decomposition(dag, args.decomposition)
    except rmod.NotGorensteinError as exc:
        report["error"] = str(exc)
        return report, FAILED
    q = qmod.quotient_facets(dag, decomp)
    report["polytope"] = q.to_json()
    report["dimension"] = sum(dag.indeg(v) - 1 for v in dag.inner_vertices)
    refl = qmod.verify_reflexive(q)
    report["reflexive"] = refl.ok
    report["reflexive_issues"] = list(refl.issues)
    failures = []
    pairs = 0
    for s in rmod.enumerate_routes(dag):
        for m in eqmod.enumerate_transversals(decomp):
            pairs += 1
            ok, lhs, rhs = qmod.check_transversal_identity(dag, decomp, s, m)
            if not ok:
                failures.append({"route": list(s), "transversal": list(m),
                                 "lhs": lhs, "rhs": rhs})
    report["identity_pairs"] = pairs
    report["identity_failures"] = failures
    good = refl.ok and not failures
    return report, OK if good else FAILED


def cmd_order(args) -> tuple[dict, int]:
    dag = _load_graph(args.graph)
    report: dict = {"command": "order", "digest": _digest(args.graph)}
    try:
        emb = plmod.embedding_from_json(dag, _load_json(args.embedding))
        plmod.validate_embedding(dag, emb)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad embedding: {exc}") from exc
    poset = plmod.truncated_dual(dag, emb)
    report["poset"] = plmod.poset_to_json(poset)
    graded, ranks = plmod.is_graded(poset)
    report["graded"] = graded
    report["ranks"] = dict(sorted(ranks.items()))
    counts = []
    for t in range(1, args.max_dilate + 1):
        flow = geo.count_lattice_points(dag, t)
        order = _order_polytope_count(poset, t)
        counts.append({"t": t, "flow": flow, "order": order})
    report["lattice_counts"] = counts
    counts_ok = all(c["flow"] == c["order"] for c in counts)
    report["lattice_counts_agree"] = counts_ok
    if not dagmod.degree_equality(dag):
        report["equivalence"] = "skipped: degree equality fails"
        return report, OK if counts_ok else FAILED
    ver = plmod.verify_equivalence(dag, emb)
    report["equivalence"] = {
        "ok": ver.ok,
        "issues": list(ver.issues),
        "decomposition": [list(r) for r in ver.decomposition],
        "flow_simplices": ver.flow_simplices,
        "order_simplices": ver.order_simplices,
    }
    return report, OK if counts_ok and ver.ok else FAILED


def _order_polytope_count(poset: plmod.Poset, t: int) -> int:
    elems = sorted(poset.elements)
    total = 0
    for vals in product(range(t + 1), repeat=len(elems)):
        f = dict(zip(elems, vals))
        if all(f[a] <= f[b] for a, b in poset.covers):
            total += 1
    return total


def _random_dag(rng: random.Random, max_edges: int) -> dagmod.Dag:
    while True:
        inner = rng.randint(1, 3)
        m = rng.randint(inner + 1, max_edges)
        edges = []
        for i in range(m):
            tail = rng.randint(0, inner)
            head = rng.randint(tail + 1, inner + 1)
            edges.append((f"e{i}", tail, head))
        dag = dagmod.make_dag(inner, edges)
        if dagmod.validate(dag).ok:
            return dag


def cmd_fuzz(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    failures = []
    balanced = 0
    for k in range(args.count):
        dag = _random_dag(rng, args.max_edges)
        if not dagmod.degree_equality(dag):
            try:
                rmod.route_decomposition(dag)
                failures.append(f"graph {k}: decomposition of unbalanced graph")
            except rmod.NotGorensteinError:
                pass
            dag = dagmod.gorenstein_completion(dag)
        try:
            dag, _ = dagmod.contract_idle_edges(dag)
        except ValueError:
            continue              # contracts to a single point
        balanced += 1
        decomp = rmod.route_decomposition(dag)
        if not rmod.is_route_decomposition(dag, decomp):
            failures.append(f"graph {k}: invalid decomposition")
            continue
        tri = eqmod.equatorial_flow_triangulation(dag, decomp)
        h = geo.h_polynomial(tri.complex)
        hs = geo.ehrhart_hstar(dag)
        if list(h) != list(hs.h_star[:len(h)]) or any(hs.h_star[len(h):]):
            failures.append(f"graph {k}: h-vector {h} != h* {hs.h_star}")
    report = {"command": "fuzz", "seed": args.seed, "graphs": args.count,
              "balanced_checked": balanced, "failures": failures}
    return report, OK if not failures else FAILED


# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flowtri",
                                description="Equatorial flow triangulations of "
                                            "Gorenstein flow polytopes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **extra):
        sp = sub.add_parser(name)
        if extra.get("graph", True):
            sp.add_argument("graph", help="graph JSON file")
        if extra.get("decomposition"):
            sp.add_argument("--decomposition", help="route decomposition JSON file")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.set_defaults(fn=fn)
        return sp

    add("analyze", cmd_analyze)
    add("decompose", cmd_decompose)
    add("dkk", cmd_dkk, decomposition=True)
    eq = add("equatorial", cmd_equatorial, decomposition=True)
    eq.add_argument("--exhaustive-dkk", action="store_true")
    add("quotient", cmd_quotient, decomposition=True)
    order = add("order", cmd_order)
    order.add_argument("embedding", help="embedding JSON file")
    order.add_argument("--max-dilate", type=int, default=4)
    fuzz = add("fuzz", cmd_fuzz, graph=False)
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--count", type=int, default=25)
    fuzz.add_argument("--max-edges", type=int, default=8)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        report, code = args.fn(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return INVALID
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
