"""Transversals, the equatorial complex, the equatorial sphere and the
join triangulation it generates.

A transversal picks one edge from each decomposition route.  Routes that
dodge a transversal span a face of the equatorial complex; restricting the
decomposition-framing triangulation to those faces gives the sphere that,
joined with the route simplex, triangulates the whole polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .dag import Dag, degree_equality, dimension, idle_edges
from .dkk import dkk_triangulation, max_cliques
from .geometry import SimplicialComplex, Triangulation, complex_from_faces
from .routes import (Framing, NotGorensteinError, Route, decomposition_framing,
                     enumerate_routes, indicator_vector)

Transversal = tuple[str, ...]     # entry i is the chosen edge of route i


@dataclass(frozen=True)
class EquatorialFace:
    transversal: Transversal
    routes: frozenset[int]        # indices into enumerate_routes(dag)


def enumerate_transversals(decomp: Sequence[Route]) -> Iterator[Transversal]:
    """Cartesian product of the routes' edge sets, lexicographic order."""
    return product(*decomp)


def routes_avoiding(dag: Dag, transversals: Sequence[Transversal]) -> frozenset[int]:
    """Indices of routes touching no edge of any given transversal."""
    banned = {e for m in transversals for e in m}
    routes = enumerate_routes(dag)
    return frozenset(i for i, r in enumerate(routes) if not banned & set(r))


def common_face(dag: Dag, decomp: Sequence[Route], routeset: Sequence[Route]) -> bool:
    """True iff no decomposition route is buried in the union of the given
    routes' edges (equivalently the set avoids some union of transversals)."""
    union = {e for r in routeset for e in r}
    return not any(set(r) <= union for r in decomp)


def is_facet_transversal(dag: Dag, decomp: Sequence[Route], m: Transversal) -> bool:
    """Facet criterion: every inner vertex sees a route that dodges m."""
    banned = set(m)
    routes = enumerate_routes(dag)
    touched: set[int] = set()
    for r in routes:
        if banned & set(r):
            continue
        for e in r:
            edge = dag.edge_by_id[e]
            touched.add(edge.head)
    return all(v in touched for v in dag.inner_vertices)


def equatorial_facets(dag: Dag, decomp: Sequence[Route]) -> tuple[EquatorialFace, ...]:
    """Facets of the equatorial complex, deduplicated by avoided-route set.

    Distinct transversals frequently carve out the same face; the first
    transversal in lexicographic order is kept as the representative.
    """
    idle = idle_edges(dag)
    if idle:
        raise ValueError(f"idle edges present (contract them first): {idle}")
    seen: dict[frozenset[int], Transversal] = {}
    for m in enumerate_transversals(decomp):
        if not is_facet_transversal(dag, decomp, m):
            continue
        avoided = routes_avoiding(dag, [m])
        seen.setdefault(avoided, m)
    return tuple(EquatorialFace(m, rs)
                 for rs, m in sorted(seen.items(), key=lambda kv: sorted(kv[0])))


def t_eq(dag: Dag, decomp: Sequence[Route]) -> SimplicialComplex:
    """The equatorial sphere: the decomposition framing's triangulation
    restricted to the equatorial complex.

    Computed by intersecting each maximal clique with each facet's route
    set and keeping the maximal results.
    """
    if not degree_equality(dag):
        raise NotGorensteinError("not Gorenstein: degree equality fails")
    framing = decomposition_framing(dag, decomp)
    cliques = max_cliques(dag, framing)
    facets = equatorial_facets(dag, decomp)
    pieces = {tuple(sorted(set(c) & f.routes)) for c in cliques for f in facets}
    return complex_from_faces(pieces)


def equatorial_flow_triangulation(dag: Dag, decomp: Sequence[Route]) -> Triangulation:
    """Join of the equatorial sphere with the route simplex."""
    routes = enumerate_routes(dag)
    idx = {r: i for i, r in enumerate(routes)}
    simplex = tuple(sorted(idx[r] for r in decomp))
    sphere = t_eq(dag, decomp)
    if sphere.maximal_faces:
        maximal = tuple(sorted(tuple(sorted(set(f) | set(simplex)))
                               for f in sphere.maximal_faces))
    else:
        maximal = (simplex,)
    d = dimension(dag)
    for f in maximal:
        if len(f) != d + 1:
            raise AssertionError(f"join simplex {f} has size {len(f)}, expected {d + 1}")
    return Triangulation(
        complex=SimplicialComplex(maximal),
        labels=routes,
        coords=tuple(indicator_vector(dag, r) for r in routes),
    )


@dataclass(frozen=True)
class DkkComparisonReport:
    exhaustive: bool
    framings_checked: int
    matching_framings: tuple[int, ...]   # indices into the framing sweep

    @property
    def is_dkk(self) -> bool:
        return bool(self.matching_framings)


def _all_framings(dag: Dag) -> Iterator[Framing]:
    per_vertex = []
    verts = list(dag.inner_vertices)
    for v in verts:
        ins = sorted(e.id for e in dag.in_edges(v))
        outs = sorted(e.id for e in dag.out_edges(v))
        per_vertex.append([(pi, po) for pi in permutations(ins) for po in permutations(outs)])
    for combo in product(*per_vertex):
        yield Framing({v: c[0] for v, c in zip(verts, combo)},
                      {v: c[1] for v, c in zip(verts, combo)})


def framing_count(dag: Dag) -> int:
    from math import factorial
    n = 1
    for v in dag.inner_vertices:
        n *= factorial(dag.indeg(v)) * factorial(dag.outdeg(v))
    return n


def differs_from_dkk(dag: Dag, decomp: Sequence[Route], exhaustive: bool,
                     max_framings: int = 100_000) -> DkkComparisonReport:
    """Compare the equatorial flow triangulation against framed
    triangulations: just the decomposition framing's one, or all framings
    when exhaustive."""
    target = equatorial_flow_triangulation(dag, decomp).as_face_set()
    if not exhaustive:
        got = dkk_triangulation(dag, decomposition_framing(dag, decomp)).as_face_set()
        return DkkComparisonReport(False, 1, (0,) if got == target else ())
    total = framing_count(dag)
    if total > max_framings:
        raise ValueError(f"exhaustive bound exceeded: {total} framings > {max_framings}")
    matches = []
    for i, fr in enumerate(_all_framings(dag)):
        if dkk_triangulation(dag, fr).as_face_set() == target:
            matches.append(i)
    return DkkComparisonReport(True, total, tuple(matches))
