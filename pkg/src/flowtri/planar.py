"""Rotation-system planarity, poset duality and order polytopes.

A combinatorial embedding (counterclockwise rotation of edge ids at every
vertex) stands in for a drawing with the source on the left, the sink on
the right and every edge moving rightward.  Faces are traced from the
rotations; bounded faces form a poset dual to the DAG, and the flow
polytope is integrally equivalent to the order polytope of that poset.
The inverse construction rebuilds the DAG from a poset by tracing the
faces of its bottom-to-top Hasse drawing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .dag import SOURCE, Dag, degree_equality, make_dag
from .dkk import dkk_triangulation
from .equatorial import equatorial_flow_triangulation
from .geometry import SimplicialComplex, Triangulation, Vector
from .routes import (Framing, NotGorensteinError, Route, decomposition_framing,
                     is_route_decomposition)

BOTTOM = "_bot"
TOP = "_top"


# ---------------------------------------------------------------------------
# Posets

@dataclass(frozen=True)
class Poset:
    """Finite poset stored by its cover relations (Hasse diagram edges)."""

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    @cached_property
    def up_covers(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {p: [] for p in self.elements}
        for a, b in self.covers:
            out[a].append(b)
        return {p: tuple(sorted(es)) for p, es in out.items()}

    @cached_property
    def down_covers(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {p: [] for p in self.elements}
        for a, b in self.covers:
            out[b].append(a)
        return {p: tuple(sorted(es)) for p, es in out.items()}

    @cached_property
    def up_sets(self) -> dict[str, frozenset[str]]:
        """p -> {q : p <= q}, by reverse topological accumulation."""
        out: dict[str, frozenset[str]] = {}

        def build(p: str) -> frozenset[str]:
            if p not in out:
                acc = {p}
                for q in self.up_covers[p]:
                    acc |= build(q)
                out[p] = frozenset(acc)
            return out[p]

        for p in self.elements:
            build(p)
        return out

    def leq(self, a: str, b: str) -> bool:
        return b in self.up_sets[a]

    @property
    def minimal(self) -> tuple[str, ...]:
        covered = {b for _, b in self.covers}
        return tuple(p for p in self.elements if p not in covered)

    @property
    def maximal(self) -> tuple[str, ...]:
        covering = {a for a, _ in self.covers}
        return tuple(p for p in self.elements if p not in covering)


def make_poset(elements: Iterable[str], relations: Iterable[tuple[str, str]]) -> Poset:
    """Normalize arbitrary strict relations into a cover-relation poset."""
    elems = tuple(sorted(set(elements)))
    known = set(elems)
    pairs = {(a, b) for a, b in relations}
    for a, b in pairs:
        if a not in known or b not in known:
            raise ValueError(f"relation {a}<{b} uses unknown elements")
    changed = True
    while changed:                     # transitive closure
        changed = False
        for a, b in list(pairs):
            for c in elems:
                if (b, c) in pairs and (a, c) not in pairs:
                    pairs.add((a, c))
                    changed = True
    if any((a, a) in pairs for a in elems):
        raise ValueError("relations contain a cycle")
    covers = tuple(sorted((a, b) for a, b in pairs
                          if not any((a, c) in pairs and (c, b) in pairs
                                     for c in elems)))
    return Poset(elems, covers)


def poset_to_json(poset: Poset) -> dict:
    return {"elements": list(poset.elements),
            "covers": [list(c) for c in sorted(poset.covers)]}


def poset_from_json(data: Mapping) -> Poset:
    return make_poset(data["elements"], [tuple(c) for c in data["covers"]])


def is_graded(poset: Poset) -> tuple[bool, dict[str, int]]:
    """Ranks 1..r when all maximal chains share one length, else (False, {})."""
    height: dict[str, int] = {}

    def h(p: str) -> int:
        if p not in height:
            lows = poset.down_covers[p]
            height[p] = 1 + (max(map(h, lows)) if lows else 0)
        return height[p]

    for p in poset.elements:
        h(p)
    if not poset.elements:
        return True, {}
    graded = all(height[b] == height[a] + 1 for a, b in poset.covers)
    graded = graded and len({height[p] for p in poset.maximal}) == 1
    return (graded, dict(height)) if graded else (False, {})


def filters(poset: Poset) -> tuple[frozenset[str], ...]:
    """All upward-closed subsets, smallest first (closure under up-covers
    suffices to certify upward closure)."""
    out = []
    for k in range(len(poset.elements) + 1):
        for sub in combinations(poset.elements, k):
            s = set(sub)
            if all(set(poset.up_covers[p]) <= s for p in sub):
                out.append(frozenset(s))
    return tuple(sorted(out, key=lambda f: (len(f), tuple(sorted(f)))))


def order_polytope_vertices(poset: Poset) -> tuple[Vector, ...]:
    """Indicator vector of each filter over the sorted element list."""
    elems = tuple(sorted(poset.elements))
    return tuple(tuple(int(p in f) for p in elems) for f in filters(poset))


def posets_isomorphic(p: Poset, q: Poset) -> bool:
    """Brute-force cover-preserving bijection search (desk scale)."""
    if len(p.elements) != len(q.elements) or len(p.covers) != len(q.covers):
        return False
    qc = set(q.covers)
    for perm in permutations(q.elements):
        m = dict(zip(p.elements, perm))
        if all((m[a], m[b]) in qc for a, b in p.covers):
            return True
    return not p.covers and not q.covers and len(p.elements) == len(q.elements)


# ---------------------------------------------------------------------------
# Rotation systems and face tracing

Dart = tuple[str, int]              # (edge id, +1 with the edge / -1 against)


@dataclass(frozen=True)
class PlanarEmbedding:
    """Counterclockwise rotation of incident edge ids at every vertex.

    Linear conventions: at the source the tuple starts with the bottommost
    edge, at the sink with the topmost; inner rotations are read cyclically.
    """

    rotations: Mapping[int, tuple[str, ...]]


def embedding_from_json(dag: Dag, data: Mapping) -> PlanarEmbedding:
    def dec(v) -> int:
        if v == "s":
            return SOURCE
        if v == "t":
            return dag.sink
        return int(v)

    return PlanarEmbedding({dec(v): tuple(r) for v, r in data["rotations"].items()})


def embedding_to_json(dag: Dag, emb: PlanarEmbedding) -> dict:
    def enc(v: int):
        return "s" if v == SOURCE else "t" if v == dag.sink else v

    return {"rotations": {str(enc(v)): list(r)
                          for v, r in sorted(emb.rotations.items())}}


def _trace(edge_ends: Mapping[str, tuple], rotations: Mapping) -> tuple[
        list[tuple[Dart, ...]], dict[Dart, int]]:
    """Face orbits of a rotation system.

    The successor of a dart leaves the dart's arrival vertex along the edge
    preceding it in the counterclockwise rotation there; every orbit is the
    boundary walk of the face to the dart's left.
    """
    def succ(d: Dart) -> Dart:
        eid, direc = d
        tail, head = edge_ends[eid]
        v = head if direc == 1 else tail
        rot = rotations[v]
        e2 = rot[rot.index(eid) - 1]
        return (e2, 1 if edge_ends[e2][0] == v else -1)

    darts = sorted((e, d) for e in edge_ends for d in (1, -1))
    face_of: dict[Dart, int] = {}
    orbits: list[tuple[Dart, ...]] = []
    for d in darts:
        if d in face_of:
            continue
        orbit = [d]
        face_of[d] = len(orbits)
        nxt = succ(d)
        while nxt != d:
            face_of[nxt] = len(orbits)
            orbit.append(nxt)
            nxt = succ(nxt)
        orbits.append(tuple(orbit))
    return orbits, face_of


def validate_embedding(dag: Dag, emb: PlanarEmbedding) -> None:
    rots = emb.rotations
    if set(rots) != set(range(dag.sink + 1)):
        raise ValueError("rotation system must cover every vertex")
    for v in range(dag.sink + 1):
        incident = sorted(e.id for e in dag.in_edges(v)) + \
            sorted(e.id for e in dag.out_edges(v))
        if sorted(rots[v]) != sorted(incident):
            raise ValueError(f"rotation at {v} is not a permutation of its edges")
    for v in dag.inner_vertices:
        kinds = [dag.edge_by_id[e].tail == v for e in rots[v]]   # True = outgoing
        flips = sum(kinds[i] != kinds[i - 1] for i in range(len(kinds)))
        if flips != 2:
            raise ValueError(f"in/out edges are not contiguous at {v}")
    ends = {e.id: (e.tail, e.head) for e in dag.edges}
    orbits, _ = _trace(ends, rots)
    if (dag.sink + 1) - len(dag.edges) + len(orbits) != 2:
        raise ValueError("rotation system is not planar (Euler check fails)")


# ---------------------------------------------------------------------------
# Duality: DAG -> poset

@dataclass(frozen=True)
class PlanarDual:
    poset: Poset
    cover_of_edge: dict[str, tuple[str, str]]  # edge -> (face below, face above)


def planar_dual(dag: Dag, emb: PlanarEmbedding) -> PlanarDual:
    """Bounded faces ordered by "face below an edge precedes face above it".

    The unbounded face plays bottom for the lowest edges and top for the
    highest ones; it is reported via the markers, never as an element.
    """
    validate_embedding(dag, emb)
    ends = {e.id: (e.tail, e.head) for e in dag.edges}
    orbits, face_of = _trace(ends, emb.rotations)
    outer = face_of[(emb.rotations[SOURCE][-1], 1)]
    names: dict[int, str] = {}
    used: set[str] = set()
    for i, orbit in enumerate(orbits):
        if i == outer:
            continue
        name = "/".join(sorted({d[0] for d in orbit}))
        while name in used:
            name += "'"
        used.add(name)
        names[i] = name
    cover_of_edge = {}
    for e in dag.edges:
        above = face_of[(e.id, 1)]
        below = face_of[(e.id, -1)]
        cover_of_edge[e.id] = (BOTTOM if below == outer else names[below],
                               TOP if above == outer else names[above])
    covers = sorted({c for c in cover_of_edge.values()
                     if c[0] != BOTTOM and c[1] != TOP})
    return PlanarDual(Poset(tuple(sorted(names.values())), tuple(covers)),
                      cover_of_edge)


def truncated_dual(dag: Dag, emb: PlanarEmbedding) -> Poset:
    return planar_dual(dag, emb).poset


# ---------------------------------------------------------------------------
# Duality: poset -> DAG

def hasse_edges(poset: Poset) -> tuple[tuple[str, str, str], ...]:
    """(edge id, lower, upper) for the Hasse diagram of the bounded poset."""
    out = [(f"{a}<{b}", a, b) for a, b in poset.covers]
    out += [(f"{BOTTOM}<{m}", BOTTOM, m) for m in poset.minimal]
    out += [(f"{m}<{TOP}", m, TOP) for m in poset.maximal]
    if not poset.elements:
        out = [(f"{BOTTOM}<{TOP}", BOTTOM, TOP)]
    return tuple(sorted(out))


def poset_to_dag(poset: Poset,
                 hasse_rotations: Mapping[str, Sequence[str]] | None = None
                 ) -> tuple[Dag, PlanarEmbedding]:
    """Rebuild the DAG whose bounded faces realize the poset.

    Traces the faces of the bottom-to-top Hasse drawing of the poset with
    bottom and top adjoined; faces become vertices, each cover becomes the
    edge from the face on its left to the face on its right, and the
    unbounded face splits into the source (left arc) and sink (right arc).
    """
    if any(p in (BOTTOM, TOP) for p in poset.elements):
        raise ValueError(f"element names {BOTTOM}/{TOP} are reserved")
    edges = hasse_edges(poset)
    ends = {eid: (a, b) for eid, a, b in edges}
    if hasse_rotations is None:
        hasse_rotations = _layered_rotations(poset, edges)
    verts = set(ends_flat(ends))
    if set(hasse_rotations) != verts:
        raise ValueError("Hasse rotations must cover every element plus ends")
    orbits, face_of = _trace(ends, hasse_rotations)
    if len(verts) - len(ends) + len(orbits) != 2:
        raise ValueError("Hasse rotation system is not planar (Euler check fails)")
    outer = face_of[(hasse_rotations[BOTTOM][-1], 1)]

    inner = [i for i in range(len(orbits)) if i != outer]
    key = {i: tuple(sorted({d[0] for d in orbits[i]})) for i in inner}
    # left-to-right positions: topologically order faces along the duals
    succs: dict[int, set[int]] = {i: set() for i in inner}
    for eid in ends:
        a, b = face_of[(eid, 1)], face_of[(eid, -1)]   # west face, east face
        if a == b:
            if a != outer:
                raise ValueError(f"cover {eid} has the same bounded face on "
                                 "both sides (not strongly planar)")
            continue
        if a != outer and b != outer:
            succs[a].add(b)
    order: list[int] = []
    pending = dict(succs)
    while pending:
        ready = sorted((i for i in pending
                        if all(i not in s for j, s in pending.items() if j != i)),
                       key=lambda i: key[i])
        if not ready:
            raise ValueError("dual faces contain a cycle (bad rotations)")
        order.append(ready[0])
        del pending[ready[0]]
    number = {f: i + 1 for i, f in enumerate(order)}

    def vertex(face: int, end: str) -> int:
        if face == outer:
            return 0 if end == "tail" else len(inner) + 1
        return number[face]

    dag_edges = sorted((eid, vertex(face_of[(eid, 1)], "tail"),
                        vertex(face_of[(eid, -1)], "head")) for eid in ends)
    dag = make_dag(len(inner), dag_edges)

    rotations: dict[int, tuple[str, ...]] = {}
    for i in inner:
        rotations[number[i]] = tuple(d[0] for d in orbits[i])
    out_orbit = list(orbits[outer])
    n = len(out_orbit)
    start = next(k for k in range(n)
                 if out_orbit[k][1] == 1 and out_orbit[k - 1][1] == -1)
    cyc = out_orbit[start:] + out_orbit[:start]
    ups = [d for d in cyc if d[1] == 1]
    if cyc[:len(ups)] != ups:
        raise ValueError("outer boundary does not split into two monotone arcs")
    rotations[0] = tuple(d[0] for d in ups)
    rotations[len(inner) + 1] = tuple(d[0] for d in cyc[len(ups):])
    emb = PlanarEmbedding(rotations)
    validate_embedding(dag, emb)
    return dag, emb


def ends_flat(ends: Mapping[str, tuple[str, str]]) -> Iterable[str]:
    for a, b in ends.values():
        yield a
        yield b


def _layered_rotations(poset: Poset, edges) -> dict[str, tuple[str, ...]]:
    """Rotations of a layered drawing: x-position by name within the height
    layer; counterclockwise = upward covers right to left, then downward
    covers left to right."""
    height: dict[str, int] = {BOTTOM: 0}

    def h(p: str) -> int:
        if p not in height:
            lows = poset.down_covers[p]
            height[p] = 1 + (max(map(h, lows)) if lows else 0)
        return height[p]

    for p in poset.elements:
        h(p)
    height[TOP] = 1 + max(height.values())
    layers: dict[int, list[str]] = {}
    for p in poset.elements:
        layers.setdefault(height[p], []).append(p)
    x = {p: i for layer in layers.values() for i, p in enumerate(sorted(layer))}
    x[BOTTOM] = x[TOP] = 0

    ups: dict[str, list[tuple]] = {p: [] for p in list(poset.elements) + [BOTTOM, TOP]}
    downs: dict[str, list[tuple]] = {p: [] for p in ups}
    for eid, a, b in edges:
        ups[a].append((-x[b], b, eid))
        downs[b].append((x[a], a, eid))
    return {p: tuple(eid for *_, eid in sorted(ups[p])) +
               tuple(eid for *_, eid in sorted(downs[p]))
            for p in ups}


# ---------------------------------------------------------------------------
# Planar framing and the integral equivalences

def planar_framing(dag: Dag, emb: PlanarEmbedding) -> Framing:
    """Top-to-bottom orders on in(v) and out(v) read off the rotations."""
    validate_embedding(dag, emb)
    ins: dict[int, tuple[str, ...]] = {}
    outs: dict[int, tuple[str, ...]] = {}
    for v in dag.inner_vertices:
        rot = emb.rotations[v]
        is_out = [dag.edge_by_id[e].tail == v for e in rot]
        start = next(i for i in range(len(rot))
                     if is_out[i] and not is_out[i - 1])
        cyc = rot[start:] + rot[:start]
        k = dag.outdeg(v)
        outs[v] = tuple(reversed(cyc[:k]))    # rotation lists them bottom-up
        ins[v] = tuple(cyc[k:])
    return Framing(ins, outs)


def flow_to_order(dag: Dag, emb: PlanarEmbedding, flow) -> dict[str, object]:
    """Potential on the dual elements whose increments along covers are the
    edge flows; chain-independence is enforced.  ``flow`` may be a route
    (iterable of edge ids) or a mapping edge id -> value."""
    if not isinstance(flow, Mapping):
        flow = {eid: 1 for eid in flow}
    dual = planar_dual(dag, emb)
    f: dict[str, object] = {BOTTOM: 0}
    changed = True
    while changed:
        changed = False
        for eid, (below, above) in dual.cover_of_edge.items():
            step = flow.get(eid, 0)
            if below in f and above not in f:
                f[above] = f[below] + step
                changed = True
            elif above in f and below not in f:
                f[below] = f[above] - step
                changed = True
            elif below in f and f[above] != f[below] + step:
                raise ValueError(f"flow potential is chain dependent at {eid}")
    return f


def order_to_flow(dual: PlanarDual, f: Mapping[str, object]) -> dict[str, object]:
    """Edge flows as potential differences, with bottom pinned to 0 and top
    to 1."""
    fx = {BOTTOM: 0, TOP: 1, **f}
    return {eid: fx[above] - fx[below]
            for eid, (below, above) in dual.cover_of_edge.items()}


def route_of_flow(dag: Dag, flow: Mapping[str, object]) -> Route:
    """The route carried by a unit 0/1 flow."""
    route: list[str] = []
    v = SOURCE
    while v != dag.sink:
        hot = [e for e in dag.out_edges(v) if flow.get(e.id, 0) == 1]
        if len(hot) != 1:
            raise ValueError(f"flow is not a unit route flow at vertex {v}")
        route.append(hot[0].id)
        v = hot[0].head
    return tuple(route)


def filter_of_route(dag: Dag, emb: PlanarEmbedding, route: Route) -> frozenset[str]:
    """The filter whose indicator vertex corresponds to the route: dual
    elements above the route's drawing."""
    f = flow_to_order(dag, emb, route)
    return frozenset(p for p, val in f.items()
                     if p not in (BOTTOM, TOP) and val == 1)


# ---------------------------------------------------------------------------
# Triangulations of the order polytope

def _filter_triangulation(poset: Poset, maximal_chains) -> Triangulation:
    elems = tuple(sorted(poset.elements))
    fs = filters(poset)
    idx = {f: i for i, f in enumerate(fs)}
    labels = tuple(tuple(sorted(f)) for f in fs)
    coords = tuple(tuple(int(p in f) for p in elems) for f in fs)
    maximal = tuple(sorted(tuple(sorted(idx[f] for f in chain))
                           for chain in maximal_chains))
    for m in maximal:
        if len(m) != len(poset.elements) + 1:
            raise AssertionError(
                f"simplex {m} has {len(m)} vertices, expected {len(elems) + 1}")
    return Triangulation(SimplicialComplex(maximal), labels, coords)


def maximal_filter_chains(poset: Poset) -> tuple[tuple[frozenset[str], ...], ...]:
    """Complete chains of filters from the empty set to everything; one per
    linear extension of the poset."""
    chains: list[tuple[frozenset[str], ...]] = []

    def extend(chain: list[frozenset[str]]) -> None:
        cur = chain[-1]
        if len(cur) == len(poset.elements):
            chains.append(tuple(chain))
            return
        rest = [p for p in poset.elements if p not in cur]
        for p in sorted(rest):
            if all(q in cur for q in poset.up_covers[p]):
                chain.append(cur | {p})
                extend(chain)
                chain.pop()

    extend([frozenset()])
    return tuple(chains)


def linear_extension_count(poset: Poset) -> int:
    return len(maximal_filter_chains(poset))


def canonical_triangulation(poset: Poset) -> Triangulation:
    """Unimodular triangulation whose simplices are the complete chains of
    filters."""
    return _filter_triangulation(poset, maximal_filter_chains(poset))


def rank_constant_filters(poset: Poset) -> tuple[frozenset[str], ...]:
    """Unions of the top ranks, largest first (everything down to nothing)."""
    graded, ranks = is_graded(poset)
    if not graded:
        raise ValueError("poset is not graded")
    r = max(ranks.values(), default=0)
    return tuple(frozenset(p for p in poset.elements if ranks[p] > j)
                 for j in range(r + 1))


def is_equatorial_chain(poset: Poset, chain: Sequence[frozenset[str]]) -> bool:
    """Equatoriality of a chain of nonempty filters, by two equivalent
    tests: the summed indicator map must vanish somewhere and stay level
    across some cover between every pair of consecutive ranks, and the same
    condition phrased through the chain's jumps."""
    graded, ranks = is_graded(poset)
    if not graded:
        raise ValueError("poset is not graded")
    fs = sorted((frozenset(f) for f in chain), key=len)
    if len(set(fs)) != len(fs):
        raise ValueError("chain has repeated filters")
    for small, big in zip(fs, fs[1:]):
        if not small < big:
            raise ValueError("filters do not form a chain")
    if any(not f for f in fs):
        raise ValueError("chain filters must be nonempty")
    r = max(ranks.values(), default=0)
    f = {p: sum(p in fi for fi in fs) for p in poset.elements}
    by_map = min(f.values(), default=1) == 0 and all(
        any(ranks[a] == j - 1 and ranks[b] == j and f[a] == f[b]
            for a, b in poset.covers)
        for j in range(2, r + 1))

    jump = {}                                  # element -> jump index
    prev: frozenset[str] = frozenset()
    for i, fi in enumerate(fs, start=1):
        for p in fi - prev:
            jump[p] = i
        prev = fi
    for p in poset.elements:                   # trailing jump: not in any filter
        jump.setdefault(p, len(fs) + 1)
    by_jumps = any(j == len(fs) + 1 for j in jump.values()) and all(
        any(ranks[a] == j - 1 and ranks[b] == j and jump[a] == jump[b]
            for a, b in poset.covers)
        for j in range(2, r + 1))
    assert by_map == by_jumps, "equatoriality tests disagree"
    return by_map


def maximal_equatorial_chains(poset: Poset) -> tuple[tuple[frozenset[str], ...], ...]:
    """Inclusion-maximal equatorial chains of nonempty proper filters."""
    proper = [f for f in filters(poset) if f and len(f) < len(poset.elements)]
    proper.sort(key=lambda f: (len(f), tuple(sorted(f))))
    good: list[tuple[frozenset[str], ...]] = []

    def extend(chain: list[frozenset[str]], start: int) -> None:
        if chain and is_equatorial_chain(poset, chain):
            good.append(tuple(chain))
        for i in range(start, len(proper)):
            if not chain or chain[-1] < proper[i]:
                chain.append(proper[i])
                extend(chain, i + 1)
                chain.pop()

    extend([], 0)
    keep = [c for c in good
            if not any(set(c) < set(d) for d in good if d != c)]
    return tuple(sorted(keep, key=lambda c: tuple(sorted(map(sorted, c)))))


def equatorial_order_triangulation(poset: Poset) -> Triangulation:
    """Join of the rank-constant simplex with the equatorial chain complex."""
    sigma = set(rank_constant_filters(poset))
    eq = maximal_equatorial_chains(poset)
    if eq:
        chains = [tuple(sigma | set(c)) for c in eq]
    else:
        chains = [tuple(sigma)]
    return _filter_triangulation(poset, chains)


# ---------------------------------------------------------------------------
# The route decomposition of the embedding, and the grand comparison

def topmost_route_decomposition(dag: Dag, emb: PlanarEmbedding) -> tuple[Route, ...]:
    """Repeatedly peel the route running along the top of what remains."""
    if not degree_equality(dag):
        raise NotGorensteinError("not Gorenstein: degree equality fails")
    framing = planar_framing(dag, emb)
    live = {e.id for e in dag.edges}
    decomp: list[Route] = []
    while live:
        route: list[str] = []
        v = SOURCE
        while v != dag.sink:
            if v == SOURCE:
                eid = next(e for e in reversed(emb.rotations[SOURCE]) if e in live)
            else:
                eid = next(e for e in framing.out_order[v] if e in live)
            route.append(eid)
            v = dag.edge_by_id[eid].head
        live.difference_update(route)
        decomp.append(tuple(route))
    assert is_route_decomposition(dag, decomp)
    return tuple(decomp)


@dataclass(frozen=True)
class EquivalenceReport:
    issues: tuple[str, ...]
    decomposition: tuple[Route, ...]
    flow_simplices: int
    order_simplices: int

    @property
    def ok(self) -> bool:
        return not self.issues


def verify_equivalence(dag: Dag, emb: PlanarEmbedding) -> EquivalenceReport:
    """End-to-end comparison of the two sides of the duality.

    Checks that the topmost decomposition's framing is the planar framing,
    that complete filter chains map onto the planar framing's clique
    triangulation, that the equatorial order triangulation maps onto the
    equatorial flow triangulation simplex for simplex, and that the
    rank-constant simplex maps onto the route simplex.
    """
    issues: list[str] = []
    decomp = topmost_route_decomposition(dag, emb)
    pf = planar_framing(dag, emb)
    df = decomposition_framing(dag, decomp)
    for v in dag.inner_vertices:
        if pf.in_order[v] != df.in_order[v] or pf.out_order[v] != df.out_order[v]:
            issues.append(f"framings disagree at vertex {v}")
    dual = planar_dual(dag, emb)

    def as_route(label: tuple[str, ...]) -> Route:
        chi = {p: int(p in label) for p in dual.poset.elements}
        return route_of_flow(dag, order_to_flow(dual, chi))

    def mapped(tri: Triangulation) -> frozenset[frozenset[Route]]:
        out = set()
        for simplex in tri.simplices:
            out.add(frozenset(as_route(tri.labels[i]) for i in simplex))
        return frozenset(out)

    canon = mapped(canonical_triangulation(dual.poset))
    dkk = dkk_triangulation(dag, pf).as_face_set()
    for s in sorted(map(sorted, canon - dkk)) + sorted(map(sorted, dkk - canon)):
        issues.append(f"chain/clique triangulations differ at {s}")

    eq_tri = equatorial_order_triangulation(dual.poset)
    flow_tri = equatorial_flow_triangulation(dag, decomp)
    order_faces = mapped(eq_tri)
    flow_faces = flow_tri.as_face_set()
    for s in sorted(map(sorted, order_faces - flow_faces)) + \
            sorted(map(sorted, flow_faces - order_faces)):
        issues.append(f"equatorial triangulations differ at {s}")

    sigma_routes = {as_route(tuple(sorted(f)))
                    for f in rank_constant_filters(dual.poset)}
    if sigma_routes != set(decomp):
        issues.append("rank-constant simplex does not map onto the route simplex")
    return EquivalenceReport(tuple(issues), decomp,
                             len(flow_faces), len(order_faces))
