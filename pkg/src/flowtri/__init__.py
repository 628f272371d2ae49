"""Exact-arithmetic equatorial flow triangulations of Gorenstein flow
polytopes: route decompositions, framed (clique) triangulations, equatorial
spheres, the reflexive quotient polytope and the planar order-polytope
correspondence."""

from .dag import (D1, D2, D3, Dag, Edge, G, bypass, contract_idle_edges,
                  dag_from_json, dag_to_json, degree_equality, dimension,
                  gorenstein_completion, make_dag, stacked_rotations, validate,
                  zigzag, zigzag_rotations)
from .dkk import coherence_graph, conflict, dkk_triangulation, exceptional_routes
from .equatorial import (differs_from_dkk, enumerate_transversals,
                         equatorial_facets, equatorial_flow_triangulation, t_eq)
from .geometry import (Triangulation, count_lattice_points, ehrhart_hstar,
                       f_vector, h_polynomial, is_gorenstein, normalized_volume,
                       verify_triangulation)
from .planar import (PlanarEmbedding, Poset, canonical_triangulation,
                     flow_to_order, is_equatorial_chain, is_graded, make_poset,
                     order_to_flow, planar_dual, planar_framing, poset_to_dag,
                     equatorial_order_triangulation, topmost_route_decomposition,
                     truncated_dual, verify_equivalence)
from .quotient import (check_transversal_identity, phi, quotient_facets,
                       quotient_vertices, transversal_functional,
                       verify_reflexive)
from .routes import (Framing, NotGorensteinError, decomposition_framing,
                     enumerate_routes, route_decomposition)

__version__ = "0.1.0"
