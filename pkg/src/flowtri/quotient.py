"""Projection of the flow polytope along the route simplex.

Coordinates live in one block per inner vertex, indexed by the labels of
its incoming routes.  The projection sends an edge's basis vector to the
head-block minus tail-block basis vectors at the edge's label, which kills
the span of the decomposition routes; its image is a reflexive polytope
whose facets come from facet transversals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .dag import Dag, degree_equality
from .equatorial import Transversal, equatorial_facets
from .geometry import rank
from .routes import NotGorensteinError, Route, enumerate_routes


def edge_labels(dag: Dag, decomp: Sequence[Route]) -> dict[str, int]:
    """Edge id -> 1-based index of the decomposition route owning it."""
    return {eid: i + 1 for i, r in enumerate(decomp) for eid in r}


@dataclass(frozen=True)
class LeveledSpace:
    """Product of per-inner-vertex blocks with route-label coordinates."""

    blocks: tuple[tuple[int, tuple[int, ...]], ...]   # (vertex, sorted labels)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for v, labels in self.blocks:
            for l in labels:
                out[(v, l)] = len(out)
        return out

    @property
    def dim(self) -> int:
        return sum(len(labels) for _, labels in self.blocks)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim


def leveled_space(dag: Dag, decomp: Sequence[Route]) -> LeveledSpace:
    labels = edge_labels(dag, decomp)
    blocks = []
    for v in dag.inner_vertices:
        inlv = tuple(sorted({labels[e.id] for e in dag.in_edges(v)}))
        assert len(inlv) == dag.indeg(v), "in-labels are distinct for a decomposition"
        blocks.append((v, inlv))
    return LeveledSpace(tuple(blocks))


def phi_edge(dag: Dag, space: LeveledSpace, labels: Mapping[str, int], eid: str):
    """Image of a single edge's basis vector (as a sparse dict)."""
    e = dag.edge_by_id[eid]
    l = labels[eid]
    out: dict[int, int] = {}
    if 1 <= e.head <= dag.inner_count:
        out[space.index[(e.head, l)]] = out.get(space.index[(e.head, l)], 0) + 1
    if 1 <= e.tail <= dag.inner_count:
        out[space.index[(e.tail, l)]] = out.get(space.index[(e.tail, l)], 0) - 1
    return out


def phi(dag: Dag, decomp: Sequence[Route], x) -> tuple:
    """Linear projection of a flow vector, or of a route's indicator.

    ``x`` may be a route (tuple of edge ids) or a mapping edge id -> value.
    """
    space = leveled_space(dag, decomp)
    labels = edge_labels(dag, decomp)
    if isinstance(x, tuple):
        x = {eid: 1 for eid in x}
    vec = [0 * Fraction(1)] * space.dim if any(
        isinstance(v, Fraction) for v in x.values()) else [0] * space.dim
    for eid, value in x.items():
        for pos, coeff in phi_edge(dag, space, labels, eid).items():
            vec[pos] += coeff * value
    return tuple(vec)


@dataclass(frozen=True)
class QuotientPolytope:
    space: LeveledSpace
    vertices: tuple[tuple[int, tuple[int, ...]], ...]   # (route index, coords)
    facets: tuple[tuple[Transversal, tuple[int, ...]], ...]  # (transversal, coeffs)

    def to_json(self) -> dict:
        blocks = {str(v): list(labels) for v, labels in self.space.blocks}
        return {
            "blocks": blocks,
            "vertices": {str(i): list(c) for i, c in self.vertices},
            "facets": [{"coeffs": list(c), "rhs": 1, "transversal": list(m)}
                       for m, c in self.facets],
            "subspace": [f"sum of block {v} = 0" for v, _ in self.space.blocks],
        }


def quotient_vertices(dag: Dag, decomp: Sequence[Route]) -> QuotientPolytope:
    if not degree_equality(dag):
        raise NotGorensteinError("not Gorenstein: degree equality fails")
    space = leveled_space(dag, decomp)
    routes = enumerate_routes(dag)
    members = set(decomp)
    verts = []
    for i, r in enumerate(routes):
        img = phi(dag, decomp, r)
        if r in members:
            assert all(v == 0 for v in img), "decomposition route must project to 0"
        else:
            verts.append((i, img))
    coords = [c for _, c in verts]
    assert len(set(coords)) == len(coords), "projected vertices must be distinct"
    return QuotientPolytope(space, tuple(verts), ())


def _route_left_edges(route: Route, chosen: str) -> tuple[str, ...]:
    return route[:route.index(chosen)]


def transversal_functional(dag: Dag, decomp: Sequence[Route],
                           m: Transversal) -> tuple[int, ...]:
    """0/1 functional with support on (vertex, label) pairs reached by the
    pre-transversal prefix of each decomposition route."""
    space = leveled_space(dag, decomp)
    labels = edge_labels(dag, decomp)
    coeffs = [0] * space.dim
    for route, chosen in zip(decomp, m):
        for eid in _route_left_edges(route, chosen):
            e = dag.edge_by_id[eid]
            if 1 <= e.head <= dag.inner_count:
                coeffs[space.index[(e.head, labels[eid])]] = 1
    return tuple(coeffs)


def check_transversal_identity(dag: Dag, decomp: Sequence[Route], s: Route,
                               m: Transversal) -> tuple[bool, int, int]:
    """Evaluate the facet functional at the projected route and compare it
    with 1 - (number of transversal edges the route uses)."""
    lhs = sum(c * x for c, x in zip(transversal_functional(dag, decomp, m),
                                    phi(dag, decomp, s)))
    rhs = 1 - len(set(s) & set(m))
    return lhs == rhs, lhs, rhs


def quotient_facets(dag: Dag, decomp: Sequence[Route]) -> QuotientPolytope:
    """Full vertex/facet description, with the dimension cross-checked."""
    q = quotient_vertices(dag, decomp)
    seen: dict[tuple[int, ...], Transversal] = {}
    for face in equatorial_facets(dag, decomp):
        coeffs = transversal_functional(dag, decomp, face.transversal)
        seen.setdefault(coeffs, face.transversal)
    facets = tuple((m, c) for c, m in sorted(seen.items()))
    want = sum(dag.indeg(v) - 1 for v in dag.inner_vertices)
    got = rank([list(c) for _, c in q.vertices]) if q.vertices else 0
    if got != want:
        raise AssertionError(f"quotient rank {got} != expected dimension {want}")
    return QuotientPolytope(q.space, q.vertices, facets)


@dataclass(frozen=True)
class ReflexiveReport:
    issues: tuple[str, ...]
    interior_points: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.issues


def verify_reflexive(q: QuotientPolytope) -> ReflexiveReport:
    """Origin must be the only lattice point of the block-sum-zero lattice
    strictly inside every facet, and vertices must be simple enough."""
    issues: list[str] = []
    dim = sum(len(labels) - 1 for _, labels in q.space.blocks)
    for m, coeffs in q.facets:
        if any(c != int(c) for c in coeffs):
            issues.append(f"facet for {m} is not integral")
    for i, v in q.vertices:
        for m, coeffs in q.facets:
            if sum(c * x for c, x in zip(coeffs, v)) > 1:
                issues.append(f"vertex {i} violates facet {m}")
    # enumerate candidate interior lattice points inside the bounding box
    if q.vertices:
        lo = [min(v[k] for _, v in q.vertices) for k in range(q.space.dim)]
        hi = [max(v[k] for _, v in q.vertices) for k in range(q.space.dim)]
    else:
        lo = hi = [0] * q.space.dim
    interior: list[tuple[int, ...]] = []
    for pt in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        pos = 0
        in_lattice = True
        for v, labels in q.space.blocks:
            if sum(pt[pos:pos + len(labels)]) != 0:
                in_lattice = False
                break
            pos += len(labels)
        if not in_lattice:
            continue
        if all(sum(c * x for c, x in zip(coeffs, pt)) < 1 for _, coeffs in q.facets):
            interior.append(pt)
    if interior != [tuple([0] * q.space.dim)]:
        issues.append(f"interior lattice points {interior}, expected only the origin")
    for i, v in q.vertices:
        on = sum(1 for _, coeffs in q.facets
                 if sum(c * x for c, x in zip(coeffs, v)) == 1)
        if on < dim:
            issues.append(f"vertex {i} lies on {on} facets, expected at least {dim}")
    return ReflexiveReport(tuple(issues), tuple(interior))


def scaled(q: QuotientPolytope, factor: int) -> QuotientPolytope:
    """Dilate the vertex set (facets kept); negative control helper."""
    verts = tuple((i, tuple(factor * x for x in v)) for i, v in q.vertices)
    return QuotientPolytope(q.space, verts, q.facets)
