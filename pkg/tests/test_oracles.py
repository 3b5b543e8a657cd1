"""Dual-route checks: every production computation with an independent
derivation gets compared against it on random rational instances."""

import math
import random
from fractions import Fraction as F

from minkarr import (build_frame, cross_ratio, lift, ratio, shadow,
                     shadow_with_x, slab_pair)
from minkarr.instances import (corpus_body, random_intersecting_arrangement,
                               random_minkowski_arrangement)
from minkarr.linalg import Vector, cross3
from minkarr.polytopes import ConvexPolytope, hull, volume


def cross_ratio_route(lam_i, lam_j, alpha_j, x):
    """Width ratio through the projective route inside the projection plane.

    The raised-center line meets the two wedge lines through the common
    point (slopes -1 and +1 in (t, s) coordinates); dropping those meeting
    points to the axis and combining two cross-ratios with the axis
    intersection point reproduces the width ratio.  Degenerate incidences
    (parallel lines) return None and are skipped by the caller.
    """
    lam_d = lam_j - lam_i
    den_i = alpha_j + lam_j - lam_i
    den_j = alpha_j - lam_j + lam_i
    if den_i == 0 or den_j == 0:
        return None
    w_i = F(x - lam_i, 1) / den_i * alpha_j
    w_j = F(x + lam_i, 1) / den_j * alpha_j
    c_t = math.inf if lam_d == 0 else F(-lam_i, 1) / lam_d * alpha_j
    try:
        cr1 = cross_ratio(w_i, F(0), w_j, c_t)
        cr2 = cross_ratio(w_j, alpha_j, F(0), c_t)
    except (ZeroDivisionError, ValueError):
        return None
    return abs(cr1 * cr2)


def test_width_ratio_against_cross_ratio_route():
    rng = random.Random(99)
    agree = 0
    for t in range(120):
        arr = random_intersecting_arrangement(rng, body=corpus_body(rng, t))
        n = len(arr)
        for i in range(n):
            for j in range(i + 1, n):
                fr = build_frame(arr, i, j)
                sd0 = shadow(arr, fr)
                for _ in range(3):
                    x = sd0.inter_lo + (sd0.inter_hi - sd0.inter_lo) \
                        * F(rng.randint(0, 16), 16)
                    sd = shadow_with_x(sd0, x)
                    li = arr.members[i].ratio
                    lj = arr.members[j].ratio
                    rho = ratio(li, lj, sd.u_i, sd.u_j)
                    if isinstance(rho, float) and math.isinf(rho):
                        continue
                    oracle = cross_ratio_route(li, lj, sd.alphas[j],
                                               sd.x_coord)
                    if oracle is None:
                        continue
                    assert oracle == abs(rho)
                    agree += 1
    assert agree > 1500


def closed_form_slab(arr, frame, sd):
    """Slab planes written out by hand: for supporting data (a, c) at r and
    common point x, the shared normal in the lifted coordinates is
    (a, -a.v_i - x*c) and the outer planes sit at offsets -c and +c."""
    a = frame.f_normal
    c = frame.f_offset
    vi = arr.members[frame.i].center
    normal = Vector(tuple(a.coords) + (-(a.dot(vi)) - sd.x_coord * c,))
    return normal, -c, c


def test_slab_planes_against_closed_form():
    rng = random.Random(123)
    for t in range(60):
        arr = random_minkowski_arrangement(rng, body=corpus_body(rng, t))
        n = len(arr)
        for i in range(n):
            for j in range(i + 1, n):
                frame = build_frame(arr, i, j)
                sd = shadow(arr, frame)
                slab = slab_pair(arr, frame, sd)
                normal, off_i, off_j = closed_form_slab(arr, frame, sd)
                # same planes up to one common scale (sign included)
                scale = None
                for u, v in zip(normal.coords, slab.normal.coords):
                    if u != 0:
                        scale = v / u
                        break
                assert scale is not None and scale != 0
                assert slab.normal == normal * scale
                assert slab.c_k_ij == off_i * scale
                assert slab.c_k_ji == off_j * scale
                # the inner planes pass through the lifted pair
                lifted = lift(arr)
                assert slab.normal.dot(lifted.points[i]) == slab.c_g_ij
                assert slab.normal.dot(lifted.points[j]) == slab.c_g_ji


def origin_fan_volume(poly: ConvexPolytope):
    """Signed origin-based tetrahedron sum over facet fans; independent of
    the interior-centroid fan used by the production volume."""
    from minkarr.polytopes import _facet_vertices, _order_facet
    total = F(0)
    for normal, offset in poly.facets:
        ring = _order_facet(_facet_vertices(poly, normal, offset), normal)
        for idx in range(1, len(ring) - 1):
            q0, q1, q2 = ring[0], ring[idx], ring[idx + 1]
            det = cross3(q1 - q0, q2 - q0).dot(-q0)
            total += F(det)
    return abs(total) / 6


def test_volume_against_origin_fan():
    rng = random.Random(321)
    for _ in range(25):
        pts = [Vector((F(rng.randint(-8, 8), 2), F(rng.randint(-8, 8), 2),
                       F(rng.randint(-8, 8), 2))) for _ in range(rng.randint(4, 9))]
        h = hull(pts)
        if not isinstance(h, ConvexPolytope):
            continue
        assert volume(h) == origin_fan_volume(h)
