"""Per-pair projection frames, shadow segments, the lift and its slab planes.

Geometry of the construction, for a fixed pair (i, j) of homothets in R^d:

* the frame carries the boundary direction r (gauge-1 point toward the other
  center) and a supporting hyperplane of the unit body at r;
* projecting every member along that hyperplane's direction space onto the
  line through v_i with direction r turns each homothet into the interval
  [alpha_k - lam_k, alpha_k + lam_k] in r-units (the shadow), and pairwise
  intersection gives the intervals a common point x;
* embedding R^d into the flat {x_{d+1} = 0, x_{d+2} = 1} of R^{d+2}, raising
  each center by its ratio, and centrally projecting from the origin onto
  {x_{d+1} = 1} sends member k to y_k = (v_k / lam_k, 1 / lam_k), and the two
  wedge hyperplanes built at x become a pair of parallel planes whose slab
  contains every y_k.

The slab planes are computed by exact nullspace elimination in R^{d+2}; no
symbolic point-at-infinity handling is needed.  The labeling convention is
that k_ij comes from the wedge plane through the direction of the line
(v_i + lam_i r, x_i) and the normal is oriented so that N.y_i <= N.y_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from . import scalars
from .arrangement import Arrangement
from .linalg import Vector, hyperplane_directions, nullspace
from .scalars import Scalar, div


@dataclass(frozen=True)
class ProjectionFrame:
    """Direction data for one ordered pair (i, j)."""
    i: int
    j: int
    r_vec: Vector          # gauge-1 point of K toward v_j - v_i
    f_normal: Vector       # supporting hyperplane of K at r_vec
    f_offset: Scalar       # its offset: f_normal . r_vec = f_offset > 0


@dataclass(frozen=True)
class ShadowData:
    """All members projected to r-units on the line through v_i and v_j."""
    i: int
    j: int
    alphas: Tuple[Scalar, ...]                 # alpha_i = 0 by construction
    intervals: Tuple[Tuple[Scalar, Scalar], ...]
    inter_lo: Scalar
    inter_hi: Scalar
    x_coord: Scalar                            # common point, in r-units
    u_i: Scalar                                # x - v_i = u_i * r
    u_j: Scalar                                # v_j - x = u_j * r


class ShadowIntersectionError(ValueError):
    """The shadow intervals have empty intersection; carries a witness pair
    of members whose homothets cannot intersect."""

    def __init__(self, witness: Tuple[int, int]):
        self.witness = witness
        super().__init__("shadow intervals of members %d and %d are disjoint; "
                         "the family is not pairwise intersecting" % witness)


class DegenerateWedgeError(ValueError):
    """The two wedge planes project to the same hyperplane (or the lifted
    pair is flattened onto one plane), so no slab pair exists."""


def build_frame(arr: Arrangement, i: int, j: int) -> ProjectionFrame:
    """Frame for the pair (i, j); the centers must differ."""
    vi = arr.members[i].center
    vj = arr.members[j].center
    diff = vj - vi
    if diff.is_zero():
        raise ValueError("coincident centers: members %d and %d" % (i, j))
    r_vec = arr.body.boundary_point(diff)
    f_normal, f_offset = arr.body.supporting_hyperplane(r_vec)
    return ProjectionFrame(i, j, r_vec, f_normal, f_offset)


def shadow(arr: Arrangement, frame: ProjectionFrame,
           x_coord: Optional[Scalar] = None) -> ShadowData:
    """Project every member onto the frame's line, in r-units.

    The shadow of v_k + lam_k K is exactly [alpha_k - lam_k, alpha_k + lam_k]
    because K lies between the supporting hyperplanes at r and -r and both
    endpoints are attained.  The common point defaults to the midpoint of the
    interval intersection; any point of the intersection may be supplied.
    """
    vi = arr.members[frame.i].center
    denom = frame.f_normal.dot(frame.r_vec)
    alphas = []
    intervals = []
    for h in arr.members:
        alpha = div(frame.f_normal.dot(h.center - vi), denom)
        alphas.append(alpha)
        intervals.append((alpha - h.ratio, alpha + h.ratio))
    lo_idx = max(range(len(intervals)), key=lambda k: _key(intervals[k][0]))
    hi_idx = min(range(len(intervals)), key=lambda k: _key(intervals[k][1]))
    lo = intervals[lo_idx][0]
    hi = intervals[hi_idx][1]
    if scalars.gt(lo, hi):
        raise ShadowIntersectionError((lo_idx, hi_idx))
    if x_coord is None:
        x_coord = div(lo + hi, 2)
    elif scalars.lt(x_coord, lo) or scalars.gt(x_coord, hi):
        raise ValueError("x_coord lies outside the interval intersection")
    u_i = x_coord - alphas[frame.i]
    u_j = alphas[frame.j] - x_coord
    return ShadowData(frame.i, frame.j, tuple(alphas), tuple(intervals),
                      lo, hi, x_coord, u_i, u_j)


def shadow_with_x(sd: ShadowData, x_coord: Scalar) -> ShadowData:
    """The same shadow re-pointed at another common point of the intervals."""
    if scalars.lt(x_coord, sd.inter_lo) or scalars.gt(x_coord, sd.inter_hi):
        raise ValueError("x_coord lies outside the interval intersection")
    return replace(sd, x_coord=x_coord,
                   u_i=x_coord - sd.alphas[sd.i],
                   u_j=sd.alphas[sd.j] - x_coord)


def _key(v: Scalar):
    return Fraction(v) if scalars.is_exact(v) else v


def ratio(lam_i: Scalar, lam_j: Scalar, u_i: Scalar, u_j: Scalar) -> Scalar:
    """The width ratio 2*lam_i*lam_j / (lam_i*u_j + lam_j*u_i).

    A vanishing denominator (the doubly-extreme position of the common
    point) is reported as the infinity marker math.inf.  A negative
    denominator makes the signed value negative: the common point then sits
    on the far side of both centers, the wedge is inverted, and the distance
    identity holds for the absolute value.  Whenever neither homothet center
    lies interior to the other (u_i, u_j >= 0), the denominator is positive.
    """
    if scalars.le(lam_i, 0) or scalars.le(lam_j, 0):
        raise ValueError("ratios must be positive")
    denom = lam_i * u_j + lam_j * u_i
    if scalars.sign(denom) == 0:
        return math.inf
    return div(2 * lam_i * lam_j, denom)


@dataclass(frozen=True)
class LiftedConfig:
    """Images y_k = (v_k / lam_k, 1 / lam_k) of the members in dim d+1."""
    points: Tuple[Vector, ...]


def _lift_point(center: Vector, lam: Scalar) -> Vector:
    # explicit homogeneous route: embed as (v, lam, 1) in R^{d+2}, divide by
    # the coordinate the central projection normalizes, drop the constant slot
    homogeneous = center.extended(lam, 1)
    w = homogeneous[center.dim]
    projected = homogeneous / w
    return Vector(projected.coords[:center.dim] + (projected.coords[-1],))


def lift(arr: Arrangement) -> LiftedConfig:
    """Central projection of the raised centers; exact for rational input."""
    return LiftedConfig(tuple(_lift_point(h.center, h.ratio)
                              for h in arr.members))


def unlift(y: Vector) -> Tuple[Vector, Scalar]:
    """Recover (center, ratio) from a lifted point; exact in rational mode."""
    s = y[-1]
    if scalars.le(s, 0):
        raise ValueError("lifted points have positive last coordinate")
    lam = div(1, s)
    center = Vector(div(c, s) for c in y.coords[:-1])
    return center, lam


@dataclass(frozen=True)
class SlabPair:
    """Parallel-plane data of one pair in the lifted space (dim d+1).

    The normal is kept at its exact elimination scale rather than unit
    Euclidean length; every check performed on a slab is a ratio of offsets
    along the same normal, which is scale-invariant.  Orientation satisfies
    normal . y_i <= normal . y_j.
    """
    i: int
    j: int
    normal: Vector
    c_k_ij: Scalar      # outer plane from the wedge plane at the i side
    c_k_ji: Scalar      # outer plane from the wedge plane at the j side
    c_g_ij: Scalar      # inner plane through y_i
    c_g_ji: Scalar      # inner plane through y_j
    s_i: Vector         # line(y_i, y_j) meets the k_ij plane
    s_j: Vector         # line(y_i, y_j) meets the k_ji plane


@lru_cache(maxsize=4096)
def _wedge_space(f_normal_coords: tuple, dir_coords: tuple) -> Tuple[Vector, Vector]:
    """Basis of the normals orthogonal to the wedge plane's direction space
    (the supporting hyperplane directions plus one tilted line direction).
    This part does not depend on the common point, so it is cached."""
    f_normal = Vector(f_normal_coords)
    rows = [w.extended(0, 0).coords for w in hyperplane_directions(f_normal)]
    rows.append(dir_coords)
    basis = nullspace(rows, len(dir_coords))
    if len(basis) != 2:
        raise DegenerateWedgeError("wedge directions are degenerate "
                                   "(normal space dimension %d)" % len(basis))
    return basis[0], basis[1]


def _plane_normal(frame: ProjectionFrame, dir_vec: Vector,
                  x_emb: Vector) -> Vector:
    """Normal of the linear span of the wedge plane and the origin: the
    member of the cached two-dimensional normal space that kills the common
    point."""
    b1, b2 = _wedge_space(frame.f_normal.coords, dir_vec.coords)
    a = b1.dot(x_emb)
    b = b2.dot(x_emb)
    if scalars.eq(a, 0) and scalars.eq(b, 0):
        raise DegenerateWedgeError("wedge plane through the common point "
                                   "is not a hyperplane")
    return b1 * b - b2 * a


def _parallel_scale(u: Vector, v: Vector) -> Scalar:
    """s with v == s*u; raises when the vectors are not parallel."""
    s = None
    for a, b in zip(u.coords, v.coords):
        if not scalars.eq(a, 0):
            s = div(b, a)
            break
    if s is None:
        raise DegenerateWedgeError("zero slab normal")
    for a, b in zip(u.coords, v.coords):
        if not scalars.eq(b, a * s):
            raise DegenerateWedgeError("wedge planes project to non-parallel "
                                       "hyperplanes")
    return s


def slab_pair(arr: Arrangement, frame: ProjectionFrame,
              sd: ShadowData) -> SlabPair:
    """Build the parallel plane pair of the pair (i, j) from its shadow.

    The wedge planes are spanned inside R^{d+2} by the supporting
    hyperplane's direction space, the tilted line direction of the relevant
    side, and the common point; their central projections are recovered by
    exact nullspace computation and then restricted to the target flat.
    """
    d = arr.dim
    vi = arr.members[frame.i].center
    x_point = vi + frame.r_vec * sd.x_coord
    x_emb = x_point.extended(0, 1)
    dir_i = (-frame.r_vec).extended(1, 0)
    dir_j = frame.r_vec.extended(1, 0)
    n_i = _plane_normal(frame, dir_i, x_emb)
    n_j = _plane_normal(frame, dir_j, x_emb)

    def restrict(n_full: Vector) -> Tuple[Vector, Scalar]:
        # N=(n, n_{d+1}, n_{d+2}) cuts the flat {x_{d+1}=1} in the hyperplane
        # (n, n_{d+2}) . y = -n_{d+1} of the (d+1)-dimensional coordinates
        normal = Vector(n_full.coords[:d] + (n_full.coords[d + 1],))
        return normal, -n_full.coords[d]

    m_i, off_i = restrict(n_i)
    m_j, off_j = restrict(n_j)
    scale = _parallel_scale(m_i, m_j)
    normal = m_i
    c_k_ij = off_i
    c_k_ji = div(off_j, scale)

    y_i = _lift_point(arr.members[frame.i].center, arr.members[frame.i].ratio)
    y_j = _lift_point(arr.members[frame.j].center, arr.members[frame.j].ratio)
    c_g_ij = normal.dot(y_i)
    c_g_ji = normal.dot(y_j)
    if scalars.gt(c_g_ij, c_g_ji):
        normal = -normal
        c_k_ij, c_k_ji = -c_k_ij, -c_k_ji
        c_g_ij, c_g_ji = -c_g_ij, -c_g_ji

    direction = c_g_ji - c_g_ij
    if scalars.eq(direction, 0):
        raise DegenerateWedgeError("projected pair lies on one hyperplane; "
                                   "the inner planes coincide")
    t_i = div(c_k_ij - c_g_ij, direction)
    t_j = div(c_k_ji - c_g_ij, direction)
    step = y_j - y_i
    s_i = y_i + step * t_i
    s_j = y_i + step * t_j
    return SlabPair(frame.i, frame.j, normal, c_k_ij, c_k_ji,
                    c_g_ij, c_g_ji, s_i, s_j)


def verify_slab(lifted: LiftedConfig, slab: SlabPair) -> Tuple[bool, Optional[int]]:
    """Check that every lifted point lies between the two outer planes.

    Exact containment in rational mode; in floating mode the tolerance is
    applied to offsets normalized by the Euclidean length of the normal.
    Returns (ok, offending index or None).
    """
    values = [slab.normal.dot(y) for y in lifted.points]
    lo = min(slab.c_k_ij, slab.c_k_ji, key=_key)
    hi = max(slab.c_k_ij, slab.c_k_ji, key=_key)
    if scalars.is_exact(lo, hi, *values):
        margin: Scalar = 0
    else:
        margin = scalars.tolerance() * math.sqrt(float(slab.normal.norm_sq()))
    for k, val in enumerate(values):
        if val < lo - margin or val > hi + margin:
            return False, k
    return True, None


def verify_ratio_identity(slab: SlabPair, y_i: Vector, y_j: Vector,
                          expected: Scalar) -> bool:
    """Both equalities of the width-ratio identity, against |expected|.

    Route one compares the offset gaps of the outer and inner planes; route
    two compares the squared Euclidean lengths of s_i - s_j and y_i - y_j.
    Distances are nonnegative, so a signed expected value is checked through
    its absolute value.  Exact in rational mode, relative 1e-9 otherwise.
    """
    if isinstance(expected, float) and not math.isfinite(expected):
        raise ValueError("expected ratio is not finite")
    expected = abs(expected)
    gap_k = slab.c_k_ij - slab.c_k_ji
    gap_g = slab.c_g_ij - slab.c_g_ji
    if scalars.sign(gap_g) == 0:
        raise ValueError("inner planes coincide; the ratio is undefined")
    route_offsets = abs(div(gap_k, gap_g))
    if not scalars.eq_rel(route_offsets, expected):
        return False
    s_sq = (slab.s_i - slab.s_j).norm_sq()
    y_sq = (y_i - y_j).norm_sq()
    if scalars.sign(y_sq) == 0:
        raise ValueError("lifted points coincide")
    return scalars.eq_rel(div(s_sq, y_sq), expected * expected)


INFINITY = math.inf


def cross_ratio(x1, x2, x3, x4) -> Scalar:
    """Cross-ratio (x1-x3)/(x2-x3) : (x1-x4)/(x2-x4) of collinear coordinates.

    One argument may be the point at infinity (math.inf); the two distances
    involving it are dropped from the formula.
    """
    args = [x1, x2, x3, x4]
    infinite = [k for k, v in enumerate(args)
                if isinstance(v, float) and math.isinf(v)]
    if len(infinite) > 1:
        raise ValueError("at most one point may be at infinity")
    if not infinite:
        num = (x1 - x3) * (x2 - x4)
        den = (x2 - x3) * (x1 - x4)
    else:
        which = infinite[0]
        if which == 0:
            num, den = (x2 - x4), (x2 - x3)
        elif which == 1:
            num, den = (x1 - x3), (x1 - x4)
        elif which == 2:
            num, den = (x2 - x4), (x1 - x4)
        else:
            num, den = (x1 - x3), (x2 - x3)
    if scalars.sign(den) == 0:
        raise ZeroDivisionError("indeterminate cross-ratio (0/0 or x/0)")
    return div(num, den)


def trapezoid_combine(theta1: Scalar, theta2: Scalar,
                      a1: Vector, a3: Vector,
                      b1: Vector, b3: Vector) -> Vector:
    """Predicted middle difference for points constrained by
    theta1*(p1 - p2) = theta2*(p2 - p3) on both rails:
    b2 - a2 = theta1/(theta1+theta2)*(b1-a1) + theta2/(theta1+theta2)*(b3-a3).
    """
    total = theta1 + theta2
    if scalars.sign(total) == 0:
        raise ValueError("theta1 + theta2 must be nonzero")
    w1 = div(theta1, total)
    w2 = div(theta2, total)
    return (b1 - a1) * w1 + (b3 - a3) * w2


def check_central_overlap_ratio(sd: ShadowData, lam_i: Scalar,
                                lam_j: Scalar) -> bool:
    """If the two shadow intervals meet only between the centers then the
    width ratio is at most 2; returns whether that implication held."""
    lo_i, hi_i = sd.intervals[sd.i]
    lo_j, hi_j = sd.intervals[sd.j]
    lo = max(lo_i, lo_j, key=_key)
    hi = min(hi_i, hi_j, key=_key)
    premise = (not scalars.gt(lo, hi)
               and scalars.ge(lo, 0)
               and scalars.le(hi, sd.alphas[sd.j]))
    if not premise:
        return True
    value = ratio(lam_i, lam_j, sd.u_i, sd.u_j)
    if isinstance(value, float) and not math.isfinite(value):
        return False
    return scalars.le(value, 2)


def pair_diagnostics(arr: Arrangement, i: int, j: int,
                     x_coord: Optional[Scalar] = None) -> dict:
    """JSON-ready dump of the whole per-pair construction."""
    from .scalars import format_scalar
    frame = build_frame(arr, i, j)
    sd = shadow(arr, frame, x_coord)
    lam_i = arr.members[i].ratio
    lam_j = arr.members[j].ratio
    rho = ratio(lam_i, lam_j, sd.u_i, sd.u_j)
    slab = slab_pair(arr, frame, sd)
    lifted = lift(arr)
    ok, offender = verify_slab(lifted, slab)
    fmt = format_scalar
    return {
        "pair": [i, j],
        "frame": {"r_vec": [fmt(c) for c in frame.r_vec],
                  "f_normal": [fmt(c) for c in frame.f_normal],
                  "f_offset": fmt(frame.f_offset)},
        "alphas": [fmt(a) for a in sd.alphas],
        "intervals": [[fmt(lo), fmt(hi)] for lo, hi in sd.intervals],
        "x": fmt(sd.x_coord),
        "u_i": fmt(sd.u_i),
        "u_j": fmt(sd.u_j),
        "ratio": fmt(rho) if not (isinstance(rho, float)
                                  and math.isinf(rho)) else "infinite",
        "slab": {"normal": [fmt(c) for c in slab.normal],
                 "c_k_ij": fmt(slab.c_k_ij), "c_k_ji": fmt(slab.c_k_ji),
                 "c_g_ij": fmt(slab.c_g_ij), "c_g_ji": fmt(slab.c_g_ji)},
        "slab_contains_all": ok,
        "slab_offender": offender,
    }
