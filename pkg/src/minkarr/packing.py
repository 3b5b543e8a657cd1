"""Volume-packing certificates for slab-constrained point sets.

The checked statement: if every pair of points of X comes with two distinct
parallel hyperplanes whose slab contains X, and the slab width is at most
lam >= 1 times the gap of the parallel planes through the two points, then
|X| <= (1 + lam)^d.  The verifier builds the evidence the argument predicts:
homothetic copies of the hull shrunk by 1/(1+lam) toward each point must be
pairwise interior-disjoint, so their exactly-equal volumes must fit inside
the hull.

``lifted_packing_pipeline`` wires this to planar arrangements: it lifts a
pairwise intersecting Minkowski arrangement of the plane into dimension 3,
derives every pair's slab from the shadow construction, checks the width
ratios against 2 and emits the full certificate with the 3^(d+1) cardinality
conclusion.

A point set spanning a proper affine subspace is not an error: the checker
drops to exact coordinates inside the affine hull and certifies the stronger
lower-dimensional bound (certificates record this as the induction branch).
Whether a given point of a pair sits nearer to one outer plane or the other
never matters here: disjointness of the shrunken copies is established
directly, so the certificate is independent of any such labeling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import scalars
from .arrangement import (Arrangement, arrangement_size_bound,
                          find_intersection_violation,
                          find_minkowski_violation)
from .lifting import (DegenerateWedgeError, build_frame, lift, ratio, shadow,
                      slab_pair, verify_slab)
from .linalg import Vector, affine_coordinates
from .polytopes import (LowerDimensional, hull, interiors_disjoint,
                        shrink, volume)
from .scalars import Scalar, div, format_scalar


@dataclass(frozen=True)
class PairSlabs:
    """Slab data of one unordered pair: a shared normal, the two outer plane
    offsets and the two inner offsets (planes through the pair's points)."""
    i: int
    j: int
    normal: Vector
    c_outer_i: Scalar
    c_outer_j: Scalar
    c_inner_i: Scalar
    c_inner_j: Scalar


@dataclass(frozen=True)
class SlabFamily:
    points: Tuple[Vector, ...]
    pairs: Tuple[PairSlabs, ...]

    def __post_init__(self):
        n = len(self.points)
        for p in self.pairs:
            if not (0 <= p.i < n and 0 <= p.j < n and p.i != p.j):
                raise ValueError("pair indices out of range")


@dataclass
class Stage:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PackingCertificate:
    """Auditable evidence of one packing verification run."""
    lam: Scalar
    n: int
    ambient_dim: int
    affine_dim: Optional[int] = None
    induction_branch: bool = False
    bound: Optional[int] = None
    bound_effective: Optional[int] = None
    stages: List[Stage] = field(default_factory=list)
    pair_ratios: List[Tuple[int, int, Scalar]] = field(default_factory=list)
    hull_volume: Optional[Scalar] = None
    copy_volumes: List[Scalar] = field(default_factory=list)
    volume_sum: Optional[Scalar] = None
    disjoint_pairs_checked: int = 0
    offending_pair: Optional[Tuple[int, int]] = None
    verdict: bool = False

    @property
    def failed_stage(self) -> Optional[str]:
        for s in self.stages:
            if not s.passed:
                return s.name
        return None

    def _fail(self, name: str, detail: str,
              pair: Optional[Tuple[int, int]] = None) -> "PackingCertificate":
        self.stages.append(Stage(name, False, detail))
        self.offending_pair = pair
        self.verdict = False
        return self

    def _ok(self, name: str, detail: str = "") -> None:
        self.stages.append(Stage(name, True, detail))


def _int_power_bound(lam: Scalar, exp: int) -> Scalar:
    base = 1 + lam
    return base ** exp


def slab_packing_check(family: SlabFamily, lam: Scalar) -> PackingCertificate:
    """Verify the slab hypotheses and produce the volume-packing evidence.

    Stage order: per-pair width ratios against lam, slab containment of all
    points, exact hull (with affine-hull reduction when the points are
    degenerate), shrunken copies, pairwise interior-disjointness, volume
    additivity, and the cardinality bound.  The certificate stops at the
    first failing stage and records the offending pair.
    """
    n = len(family.points)
    ambient = family.points[0].dim if n else 0
    cert = PackingCertificate(lam=lam, n=n, ambient_dim=ambient)
    if scalars.lt(lam, 1):
        raise ValueError("the packing hypothesis needs lam >= 1")
    cert.bound = None

    # stage: width ratios (the per-pair hypothesis)
    for p in family.pairs:
        gap_outer = p.c_outer_i - p.c_outer_j
        gap_inner = p.c_inner_i - p.c_inner_j
        if scalars.sign(gap_outer) == 0:
            return cert._fail("slab_ratio",
                              "outer planes of pair (%d, %d) coincide"
                              % (p.i, p.j), (p.i, p.j))
        if scalars.sign(gap_inner) == 0:
            return cert._fail("slab_ratio",
                              "inner planes of pair (%d, %d) coincide"
                              % (p.i, p.j), (p.i, p.j))
        rho = abs(div(gap_outer, gap_inner))
        cert.pair_ratios.append((p.i, p.j, rho))
        if not scalars.le(rho, lam):
            return cert._fail("slab_ratio",
                              "pair (%d, %d) has width ratio %s > %s"
                              % (p.i, p.j, rho, lam), (p.i, p.j))
    cert._ok("slab_ratio", "%d pairs within ratio %s" % (len(family.pairs), lam))

    # stage: every point inside every outer slab (float tolerances act on
    # offsets normalized by the Euclidean length of the shared normal)
    for p in family.pairs:
        lo = min(p.c_outer_i, p.c_outer_j)
        hi = max(p.c_outer_i, p.c_outer_j)
        values = [p.normal.dot(pt) for pt in family.points]
        if scalars.is_exact(lo, hi, *values):
            margin: Scalar = 0
        else:
            margin = scalars.tolerance() * math.sqrt(float(p.normal.norm_sq()))
        for k, val in enumerate(values):
            if val < lo - margin or val > hi + margin:
                return cert._fail("slab_containment",
                                  "point %d escapes the slab of pair (%d, %d)"
                                  % (k, p.i, p.j), (p.i, p.j))
    cert._ok("slab_containment")

    # reduce to exact coordinates inside the affine hull when degenerate
    coords, basis, origin = affine_coordinates(list(family.points))
    adim = len(basis)
    cert.affine_dim = adim
    cert.induction_branch = adim < ambient
    cert.bound = _int_power_bound(lam, ambient)
    cert.bound_effective = _int_power_bound(lam, max(adim, 0))
    if adim == 0:
        cert._ok("hull", "all points coincide; nothing to pack")
        cert._ok("cardinality", "1 <= %s" % cert.bound)
        cert.verdict = True
        return cert
    if adim > 3:
        raise ValueError("exact volumes are implemented for affine dimension "
                         "<= 3 (got %d)" % adim)
    points = coords if cert.induction_branch else list(family.points)

    body_hull = hull(points)
    if isinstance(body_hull, LowerDimensional):  # excluded by the reduction
        raise AssertionError("affine reduction left a degenerate hull")
    cert._ok("hull", "affine dimension %d, %d hull vertices"
             % (adim, len(body_hull.vertices)))

    copies = [shrink(body_hull, pt, lam) for pt in points]
    cert._ok("shrink", "%d homothetic copies at ratio 1/(1+%s)" % (n, lam))

    for a in range(n):
        for b in range(a + 1, n):
            cert.disjoint_pairs_checked += 1
            if not interiors_disjoint(copies[a], copies[b]):
                return cert._fail("disjointness",
                                  "copies %d and %d overlap" % (a, b), (a, b))
    cert._ok("disjointness", "%d pairs checked" % cert.disjoint_pairs_checked)

    cert.hull_volume = volume(body_hull)
    cert.copy_volumes = [volume(c) for c in copies]
    total: Scalar = 0
    for v in cert.copy_volumes:
        total = total + v
    cert.volume_sum = total
    shrink_factor = _int_power_bound(lam, adim)
    for k, v in enumerate(cert.copy_volumes):
        if not scalars.eq(v * shrink_factor, cert.hull_volume):
            return cert._fail("volume",
                              "copy %d volume is not vol(P)/(1+lam)^%d"
                              % (k, adim))
    if not scalars.le(total, cert.hull_volume):
        return cert._fail("volume", "copy volumes exceed the hull volume")
    cert._ok("volume", "sum %s <= hull %s" % (total, cert.hull_volume))

    if n > cert.bound_effective:
        return cert._fail("cardinality", "%d > %s" % (n, cert.bound_effective))
    cert._ok("cardinality", "%d <= %s" % (n, cert.bound_effective))
    cert.verdict = True
    return cert


def family_from_arrangement(arr: Arrangement) -> Tuple[SlabFamily,
                                                       List[Tuple[int, int, Scalar]]]:
    """Lift the arrangement and build every pair's slab from its shadow.

    Returns the family plus the per-pair width ratios computed from the
    shadow data (before any packing stage runs).
    """
    lifted = lift(arr)
    pairs = []
    ratios = []
    n = len(arr.members)
    for i in range(n):
        for j in range(i + 1, n):
            frame = build_frame(arr, i, j)
            sd = shadow(arr, frame)
            slab = slab_pair(arr, frame, sd)
            ok, offender = verify_slab(lifted, slab)
            if not ok:
                raise AssertionError("lifted point %d escaped the slab of "
                                     "pair (%d, %d)" % (offender, i, j))
            pairs.append(PairSlabs(i, j, slab.normal, slab.c_k_ij,
                                   slab.c_k_ji, slab.c_g_ij, slab.c_g_ji))
            ratios.append((i, j, ratio(arr.members[i].ratio,
                                       arr.members[j].ratio,
                                       sd.u_i, sd.u_j)))
    return SlabFamily(lifted.points, tuple(pairs)), ratios


def lifted_packing_pipeline(arr: Arrangement) -> PackingCertificate:
    """End-to-end certificate for a planar arrangement.

    Requires dim 2 (the lifted points live in dimension 3, inside the exact
    volume range).  Checks the two arrangement predicates, lifts, verifies
    every pair's width ratio is at most 2, runs the packing check with
    lam = 2 and concludes n <= 27.
    """
    if arr.dim != 2:
        raise ValueError("the pipeline is implemented for planar arrangements")
    n = len(arr.members)
    pre = PackingCertificate(lam=2, n=n, ambient_dim=3)
    pre.bound = arrangement_size_bound(arr.dim)

    violation = find_minkowski_violation(arr)
    if violation is not None:
        return pre._fail("minkowski_property",
                         "member %d contains the center of member %d in its "
                         "interior" % violation, violation)
    pre._ok("minkowski_property")
    violation = find_intersection_violation(arr)
    if violation is not None:
        return pre._fail("pairwise_intersecting",
                         "members %d and %d do not intersect" % violation,
                         violation)
    pre._ok("pairwise_intersecting")

    try:
        family, shadow_ratios = family_from_arrangement(arr)
    except DegenerateWedgeError as exc:
        return pre._fail("lifting", str(exc))
    for i, j, rho in shadow_ratios:
        if isinstance(rho, float) and not math.isfinite(rho):
            return pre._fail("pair_ratio_bound",
                             "pair (%d, %d) has an unbounded width ratio"
                             % (i, j), (i, j))
        if not scalars.le(rho, 2):
            return pre._fail("pair_ratio_bound",
                             "pair (%d, %d) has width ratio %s > 2; the "
                             "family cannot be a Minkowski arrangement"
                             % (i, j, rho), (i, j))
    pre._ok("pair_ratio_bound", "%d pairs within ratio 2" % len(shadow_ratios))

    cert = slab_packing_check(family, 2)
    cert.stages = pre.stages + cert.stages
    cert.bound = arrangement_size_bound(arr.dim)
    if cert.verdict and n > cert.bound:
        return cert._fail("cardinality_3_to_d_plus_1",
                          "%d > %d" % (n, cert.bound))
    if cert.verdict:
        cert._ok("cardinality_3_to_d_plus_1", "%d <= %d" % (n, cert.bound))
    return cert


def _fmt(v) -> object:
    if isinstance(v, float) and math.isinf(v):
        return "infinite"
    return format_scalar(v)


def certificate_to_json(cert: PackingCertificate) -> dict:
    return {
        "lam": _fmt(cert.lam),
        "n": cert.n,
        "ambient_dim": cert.ambient_dim,
        "affine_dim": cert.affine_dim,
        "induction_branch": cert.induction_branch,
        "bound": None if cert.bound is None else _fmt(cert.bound),
        "bound_effective": None if cert.bound_effective is None
        else _fmt(cert.bound_effective),
        "stages": [{"name": s.name, "passed": s.passed, "detail": s.detail}
                   for s in cert.stages],
        "pair_ratios": [[i, j, _fmt(r)] for i, j, r in cert.pair_ratios],
        "hull_volume": None if cert.hull_volume is None
        else _fmt(cert.hull_volume),
        "copy_volumes": [_fmt(v) for v in cert.copy_volumes],
        "volume_sum": None if cert.volume_sum is None
        else _fmt(cert.volume_sum),
        "disjoint_pairs_checked": cert.disjoint_pairs_checked,
        "offending_pair": list(cert.offending_pair)
        if cert.offending_pair else None,
        "failed_stage": cert.failed_stage,
        "verdict": "pass" if cert.verdict else "fail",
    }
