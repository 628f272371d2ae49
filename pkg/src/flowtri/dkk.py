"""Coherence of routes under a framing and the induced triangulation.

Two routes sharing an inner vertex are compared twice: once along their
prefixes into the vertex (scanning backwards to the first divergence) and
once along their suffixes out of it (scanning forwards).  They conflict at
the vertex when the two comparisons point in opposite directions; a framed
DAG's triangulation has one maximal simplex for each maximal set of
pairwise non-conflicting routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .dag import SOURCE, Dag, dimension
from .geometry import SimplicialComplex, Triangulation
from .routes import Framing, Route, enumerate_routes, indicator_vector, route_vertices


def _cmp_in(dag: Dag, framing: Framing, p: Route, q: Route, v: int) -> int:
    """Compare the s->v prefixes of p and q at their first divergence
    (scanning backwards from v); -1 means p's prefix is the smaller one."""
    ep = {dag.edge_by_id[e].head: e for e in p}
    eq = {dag.edge_by_id[e].head: e for e in q}
    w = v
    while w != SOURCE:
        a, b = ep[w], eq[w]
        if a != b:
            return -1 if framing.in_pos(w, a) < framing.in_pos(w, b) else 1
        w = dag.edge_by_id[a].tail
    return 0


def _cmp_out(dag: Dag, framing: Framing, p: Route, q: Route, v: int) -> int:
    ep = {dag.edge_by_id[e].tail: e for e in p}
    eq = {dag.edge_by_id[e].tail: e for e in q}
    w = v
    while w != dag.sink:
        a, b = ep[w], eq[w]
        if a != b:
            return -1 if framing.out_pos(w, a) < framing.out_pos(w, b) else 1
        w = dag.edge_by_id[a].head
    return 0


def conflict(dag: Dag, framing: Framing, p: Route, q: Route) -> bool:
    """True iff some shared inner vertex orders the prefixes and suffixes
    of p and q in opposite directions."""
    shared = set(route_vertices(dag, p)) & set(route_vertices(dag, q))
    for v in shared:
        if v == SOURCE or v == dag.sink:
            continue
        if _cmp_in(dag, framing, p, q, v) * _cmp_out(dag, framing, p, q, v) == -1:
            return True
    return False


def coherent(dag: Dag, framing: Framing, p: Route, q: Route) -> bool:
    return not conflict(dag, framing, p, q)


@dataclass(frozen=True)
class CoherenceGraph:
    routes: tuple[Route, ...]
    adjacency: tuple[frozenset[int], ...]   # indices of coherent partners


def coherence_graph(dag: Dag, framing: Framing) -> CoherenceGraph:
    routes = enumerate_routes(dag)
    n = len(routes)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if coherent(dag, framing, routes[i], routes[j]):
                adj[i].add(j)
                adj[j].add(i)
    return CoherenceGraph(routes, tuple(frozenset(a) for a in adj))


def exceptional_routes(dag: Dag, framing: Framing) -> tuple[Route, ...]:
    g = coherence_graph(dag, framing)
    n = len(g.routes)
    return tuple(g.routes[i] for i in range(n) if len(g.adjacency[i]) == n - 1)


def _bron_kerbosch(adj: Sequence[frozenset[int]], r: set[int], p: set[int],
                   x: set[int], out: list[tuple[int, ...]]) -> None:
    if not p and not x:
        out.append(tuple(sorted(r)))
        return
    pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
    for v in sorted(p - adj[pivot]):
        _bron_kerbosch(adj, r | {v}, p & adj[v], x & adj[v], out)
        p.remove(v)
        x.add(v)


def max_cliques(dag: Dag, framing: Framing) -> tuple[tuple[int, ...], ...]:
    """All maximal cliques of the coherence graph, as sorted route-index
    tuples in canonical order.  Each must have dimension+1 members."""
    g = coherence_graph(dag, framing)
    cliques: list[tuple[int, ...]] = []
    _bron_kerbosch(g.adjacency, set(), set(range(len(g.routes))), set(), cliques)
    cliques.sort()
    want = dimension(dag) + 1
    for c in cliques:
        if len(c) != want:
            raise AssertionError(
                f"framing/coherence inconsistency: clique {c} has size {len(c)}, "
                f"expected {want}")
    return tuple(cliques)


def dkk_triangulation(dag: Dag, framing: Framing) -> Triangulation:
    routes = enumerate_routes(dag)
    cliques = max_cliques(dag, framing)
    return Triangulation(
        complex=SimplicialComplex(cliques),
        labels=routes,
        coords=tuple(indicator_vector(dag, r) for r in routes),
    )
