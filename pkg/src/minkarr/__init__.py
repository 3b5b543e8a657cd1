"""Toolkit for pairwise intersecting Minkowski arrangements of homothets.

The package verifies, instance by instance, the machinery behind the
3^(d+1) bound on such arrangements: gauge geometry of symmetric convex
bodies, the shadow/lift construction with its parallel slab planes and width
ratios, exact volume-packing certificates in the lifted space, the geometric
ratio partition, and greedy chain extraction from k-distance sets.
"""

from .arrangement import (Arrangement, ChainPropertyError, Homothet,
                          PartitionLabel, SearchConfig,
                          arrangement_from_json, arrangement_size_bound,
                          arrangement_to_json, chain_cardinality_bound,
                          chain_to_arrangement, center_in_interior,
                          cube_arrangement, find_intersection_violation,
                          find_minkowski_violation, intersects,
                          is_minkowski_arrangement, is_pairwise_intersecting,
                          partition_classes, search_arrangement)
from .bodies import (BallBody, BodyError, HPolytopeBody, SymmetricBody,
                     VPolytopeBody, body_from_json, body_to_json, l1_ball,
                     linf_ball)
from .kdistance import (UNDEFINED, ChainResult, DistanceSpectrum, PointSet,
                        chain_bound_floor, chain_to_json, find_chain_violation,
                        greedy_chain, grid_set, is_k_distance,
                        kdistance_threshold, pointset_from_json,
                        pointset_to_json, spectrum, verify_chain)
from .lifting import (DegenerateWedgeError, LiftedConfig, ProjectionFrame,
                      ShadowData, ShadowIntersectionError, SlabPair,
                      build_frame, check_central_overlap_ratio, cross_ratio,
                      lift, pair_diagnostics, ratio, shadow, shadow_with_x,
                      slab_pair, trapezoid_combine, unlift,
                      verify_ratio_identity, verify_slab)
from .linalg import Vector
from .packing import (PackingCertificate, PairSlabs, SlabFamily,
                      certificate_to_json, family_from_arrangement,
                      lifted_packing_pipeline, slab_packing_check)
from .polytopes import (ConvexPolytope, LowerDimensional, hull,
                        interiors_disjoint, overlap_probe, shrink, volume)
from .scalars import (Scalar, format_scalar, parse_scalar, set_tolerance,
                      tolerance)

__version__ = "0.1.0"
