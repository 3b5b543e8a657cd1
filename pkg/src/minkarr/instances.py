"""Seeded random instance generators with exact rational data.

The generators produce the two corpus flavors the verification suites run
on: families that are merely pairwise intersecting, and families that are
additionally Minkowski arrangements.  Both are built constructively so no
rejection loop over full predicate checks is needed:

* intersecting only: every ratio is drawn from [D/2, D] where D is the
  largest pairwise gauge distance, so ratio sums dominate every distance;
* Minkowski: starting from the componentwise-maximal feasible ratio vector
  lam_i = min_j gauge(v_i - v_j), each ratio is re-drawn from the interval
  that keeps all pairwise sums feasible, preserving both properties.

All coordinates are small-denominator rationals, which keeps the downstream
exact arithmetic fast.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from . import scalars
from .arrangement import (Arrangement, Homothet, find_intersection_violation,
                          find_minkowski_violation)
from .bodies import SymmetricBody, VPolytopeBody, l1_ball, linf_ball
from .linalg import Vector, matrix_rank


def random_symmetric_hexagon(rng: random.Random) -> VPolytopeBody:
    """A random origin-symmetric hexagon given by three vertex pairs."""
    while True:
        vs: List[Vector] = []
        for _ in range(3):
            x = Fraction(rng.randint(-8, 8), 4)
            y = Fraction(rng.randint(-8, 8), 4)
            vs.append(Vector((x, y)))
        if any(v.is_zero() for v in vs):
            continue
        distinct = all(scalars.sign(vs[a][0] * vs[b][1] - vs[a][1] * vs[b][0]) != 0
                       for a in range(3) for b in range(a + 1, 3))
        if not distinct:
            continue
        return VPolytopeBody(2, tuple(vs) + tuple(-v for v in vs))


def corpus_body(rng: random.Random, index: int) -> SymmetricBody:
    """Round-robin over the corpus body kinds, hexagons freshly sampled."""
    kind = index % 3
    if kind == 0:
        return linf_ball(2)
    if kind == 1:
        return l1_ball(2)
    return random_symmetric_hexagon(rng)


def _random_centers(rng: random.Random, n: int, dim: int,
                    span: int = 4) -> List[Vector]:
    centers: List[Vector] = []
    while len(centers) < n:
        c = Vector([Fraction(rng.randint(-span, span), 2) for _ in range(dim)])
        if not any(c == other for other in centers):
            centers.append(c)
    return centers


def _gauge_matrix(body: SymmetricBody, centers: List[Vector]):
    n = len(centers)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g[i][j] = g[j][i] = Fraction(body.gauge(centers[i] - centers[j]))
    return g


def _float_gauge(body: SymmetricBody):
    """Cheap float gauge closure used only to pre-screen random centers."""
    hform = getattr(body, "_hform", None) or body
    normals = [a.as_floats() for a in hform.facets]

    def gauge(dx, dy):
        return max(nx * dx + ny * dy for nx, ny in normals)
    return gauge


def _rational_between(rng: random.Random, lo: Fraction, hi: Fraction,
                      steps: int = 8) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randint(0, steps), steps)


def random_intersecting_arrangement(rng: random.Random,
                                    body: Optional[SymmetricBody] = None,
                                    n: Optional[int] = None) -> Arrangement:
    """A pairwise intersecting family with exact rational data (it need not
    be a Minkowski arrangement)."""
    body = body or corpus_body(rng, rng.randrange(3))
    n = n or rng.randint(3, 5)
    centers = _random_centers(rng, n, body.dim)
    g = _gauge_matrix(body, centers)
    diameter = max(g[i][j] for i in range(n) for j in range(i + 1, n))
    members = []
    for i in range(n):
        lam = _rational_between(rng, diameter / 2, diameter)
        members.append(Homothet(centers[i], lam))
    arr = Arrangement(body, tuple(members))
    if find_intersection_violation(arr) is not None:
        raise AssertionError("generator produced a non-intersecting family")
    return arr


def random_minkowski_arrangement(rng: random.Random,
                                 body: Optional[SymmetricBody] = None,
                                 n: Optional[int] = None,
                                 full_lift: bool = False) -> Arrangement:
    """A pairwise intersecting Minkowski arrangement with rational data.

    With ``full_lift`` the ratios are re-drawn until the lifted image spans
    dimension 3 affinely (needed by the full-dimensional packing runs).
    """
    body = body or corpus_body(rng, rng.randrange(3))
    n = n or rng.randint(4, 6)
    fgauge = _float_gauge(body)
    n_floor = 4 if full_lift else 3
    span = 4
    attempts = 0
    while True:
        attempts += 1
        if attempts % 200 == 0:
            # eccentric bodies make clustered center sets rare; tighten the
            # box first, then settle for a smaller family (n=3 is feasible
            # for every body by the gauge triangle inequality)
            if span > 2:
                span -= 1
            elif n > n_floor:
                n -= 1
        centers = _random_centers(rng, n, body.dim, span=span)
        # float pre-screen: the ratio polytope is nonempty iff every pair
        # distance is at most the sum of the two nearest-neighbor distances
        fpts = [c.as_floats() for c in centers]
        fg = [[fgauge(fpts[i][0] - fpts[j][0], fpts[i][1] - fpts[j][1])
               if i != j else 0.0 for j in range(n)] for i in range(n)]
        fcaps = [min(fg[i][j] for j in range(n) if j != i) for i in range(n)]
        if any(fcaps[i] + fcaps[j] < fg[i][j] - 1e-7
               for i in range(n) for j in range(i + 1, n)):
            continue
        g = _gauge_matrix(body, centers)
        caps = [min(g[i][j] for j in range(n) if j != i) for i in range(n)]
        feasible = all(caps[i] + caps[j] >= g[i][j]
                       for i in range(n) for j in range(i + 1, n))
        if not feasible:
            continue
        for _attempt in range(8):
            lams: List[Fraction] = list(caps)
            for i in range(n):
                low = max(g[i][j] - lams[j] for j in range(n) if j != i)
                low = max(low, min(caps[i], Fraction(1, 16)))
                lams[i] = _rational_between(rng, low, caps[i])
            if full_lift and not _spans_lifted_space(centers, lams):
                continue
            arr = Arrangement(body, tuple(Homothet(c, l)
                                          for c, l in zip(centers, lams)))
            if find_minkowski_violation(arr) is not None \
                    or find_intersection_violation(arr) is not None:
                raise AssertionError("generator violated its own invariants")
            return arr


def _spans_lifted_space(centers: List[Vector], lams: List[Fraction]) -> bool:
    lifted = [Vector((c[0] / l, c[1] / l, 1 / l))
              for c, l in zip(centers, lams)]
    diffs = [p - lifted[0] for p in lifted[1:]]
    return matrix_rank([d.coords for d in diffs]) == 3
