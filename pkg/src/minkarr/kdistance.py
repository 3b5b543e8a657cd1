"""Distance spectra under a body's gauge and greedy chain extraction.

A point set is a k-distance set when at most k distinct nonzero gauge
distances occur between its points.  The greedy extractor repeatedly picks
the most popular distance class from the newest chain point into the
surviving pool and restricts the pool to that class, producing points
y_1, ..., y_m with gauge(y_i - y_j) = lam_i for all i < j.  While the pool
holds at least k^t points, each round keeps at least k^(t-1) of them, so a
pool of k^(m-1) points guarantees a chain of length m.

One quirk of the pool update is deliberate: the newest chain point stays in
the pool until a nonzero class excludes it, and distance classes are always
collected over nonzero distances only.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import product
from typing import List, Optional, Tuple

from . import scalars
from .bodies import SymmetricBody
from .linalg import Vector
from .scalars import Scalar, format_scalar, parse_scalar


class _Undefined:
    """Typed marker for formulas that genuinely degenerate at d = 2."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED (the term 2 - 2^(1/(d-1)) vanishes at d = 2)"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: Tuple[Vector, ...]

    def __post_init__(self):
        for p in self.points:
            if p.dim != self.dim:
                raise ValueError("point dimension mismatch")
        n = len(self.points)
        for i in range(n):
            for j in range(i + 1, n):
                if self.points[i] == self.points[j]:
                    raise ValueError("points %d and %d coincide" % (i, j))

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class DistanceSpectrum:
    """Distinct positive distances with multiplicities, increasing order."""
    entries: Tuple[Tuple[Scalar, int], ...]

    @property
    def distances(self) -> Tuple[Scalar, ...]:
        return tuple(d for d, _ in self.entries)

    def __len__(self):
        return len(self.entries)


def spectrum(body: SymmetricBody, pts: PointSet) -> DistanceSpectrum:
    """All pairwise gauge distances, exact keys in rational mode and
    tolerance-clustered in floating mode."""
    if len(pts) < 2:
        raise ValueError("spectra need at least two points")
    dists = []
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            dists.append(body.gauge(pts.points[i] - pts.points[j]))
    if scalars.is_exact(*dists):
        counted = {}
        for d in dists:
            key = Fraction(d)
            counted[key] = counted.get(key, 0) + 1
        entries = tuple(sorted(counted.items()))
    else:
        entries = _cluster(sorted(float(d) for d in dists))
    return DistanceSpectrum(entries)


def _cluster(sorted_values: List[float]) -> Tuple[Tuple[float, int], ...]:
    entries = []
    anchor = None
    count = 0
    for v in sorted_values:
        if anchor is None or v - anchor > scalars.tolerance():
            if anchor is not None:
                entries.append((anchor, count))
            anchor, count = v, 1
        else:
            count += 1
    if anchor is not None:
        entries.append((anchor, count))
    return tuple(entries)


def is_k_distance(body: SymmetricBody, pts: PointSet, k: int) -> bool:
    return len(spectrum(body, pts)) <= k


def grid_set(dim: int, k: int) -> PointSet:
    """The integer grid {0..k}^d: (k+1)^d points whose max-norm spectrum is
    exactly {1..k}."""
    if dim < 1 or k < 1:
        raise ValueError("dimension and k must be positive")
    points = tuple(Vector([Fraction(c) for c in coords])
                   for coords in product(range(k + 1), repeat=dim))
    return PointSet(dim, points)


def _chain_bound_floor_at(dim: int, digits: int) -> int:
    with localcontext() as ctx:
        ctx.prec = digits
        root = Decimal(2) ** (Decimal(1) / Decimal(dim - 1))
        base = 1 + 2 / (2 - root)
        value = dim * base ** (dim + 1)
        return int(value)  # truncation == floor for positive values


def chain_bound_floor(dim: int):
    """floor(d * (1 + 2/(2 - 2^(1/(d-1))))^(d+1)) in high-precision decimal.

    The result must be stable under doubling of the working precision; a
    value that flips would mean the expression sits on an integer boundary.
    Returns the UNDEFINED marker at d = 2 where the denominator vanishes.
    """
    if dim < 2:
        raise ValueError("the bound needs dimension >= 2")
    if dim == 2:
        return UNDEFINED
    digits = 60
    while digits <= 960:
        first = _chain_bound_floor_at(dim, digits)
        second = _chain_bound_floor_at(dim, digits * 2)
        if first == second:
            return first
        digits *= 4
    raise ArithmeticError("floor did not stabilize under precision doubling")


def kdistance_threshold(dim: int, k: int):
    """k to the power of the chain bound floor, as an exact big integer;
    UNDEFINED at d = 2."""
    if k < 1:
        raise ValueError("k must be positive")
    f = chain_bound_floor(dim)
    if f is UNDEFINED:
        return UNDEFINED
    return k ** f


@dataclass(frozen=True)
class ChainResult:
    indices: Tuple[int, ...]
    points: Tuple[Vector, ...]
    lambdas: Tuple[Scalar, ...]
    target: int
    guaranteed: bool        # False when the pigeonhole precondition failed

    def __len__(self):
        return len(self.points)


def greedy_chain(body: SymmetricBody, pts: PointSet, k: int,
                 target: int) -> ChainResult:
    """Extract a chain of up to ``target`` points from a k-distance set.

    Each round groups the pool by its nonzero gauge distance from the newest
    chain point, keeps a class of maximal cardinality (ties break toward the
    smaller distance), and appends the first surviving point in input order.
    With at least k^(target-1) points the full target length is guaranteed;
    below that threshold the run is best-effort and flagged accordingly, and
    it stops early if the pool empties.
    """
    if target < 1:
        raise ValueError("target must be positive")
    if not is_k_distance(body, pts, k):
        raise ValueError("the point set realizes more than %d distances" % k)
    guaranteed = len(pts) >= k ** (target - 1)
    pool = list(range(len(pts)))
    chain_idx = [0]
    lambdas: List[Scalar] = []
    while len(chain_idx) < target:
        head = pts.points[chain_idx[-1]]
        classes = {}
        for idx in pool:
            dist = body.gauge(head - pts.points[idx])
            if scalars.eq(dist, 0):
                continue
            key = Fraction(dist) if scalars.is_exact(dist) \
                else _float_key(dist, classes)
            classes.setdefault(key, []).append(idx)
        if not classes:
            break
        best_key = min(classes, key=lambda d: (-len(classes[d]), d))
        survivors = classes[best_key]
        lambdas.append(best_key)
        chain_idx.append(survivors[0])
        pool = survivors
    points = tuple(pts.points[i] for i in chain_idx)
    return ChainResult(tuple(chain_idx), points, tuple(lambdas),
                       target, guaranteed)


def _float_key(dist: float, classes) -> float:
    for key in classes:
        if abs(float(key) - dist) <= scalars.tolerance():
            return key
    return dist


def verify_chain(body: SymmetricBody, chain: ChainResult) -> bool:
    """Replay the chain property gauge(y_i - y_j) == lam_i for all i < j."""
    n = len(chain.points)
    if len(chain.lambdas) != max(n - 1, 0):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            got = body.gauge(chain.points[i] - chain.points[j])
            if not scalars.eq(got, chain.lambdas[i]):
                return False
    return True


def find_chain_violation(body: SymmetricBody,
                         chain: ChainResult) -> Optional[Tuple[int, int]]:
    n = len(chain.points)
    for i in range(n):
        for j in range(i + 1, n):
            if i < len(chain.lambdas):
                got = body.gauge(chain.points[i] - chain.points[j])
                if not scalars.eq(got, chain.lambdas[i]):
                    return (i, j)
    return None


def pointset_to_json(pts: PointSet) -> dict:
    return {"dim": pts.dim,
            "points": [[format_scalar(c) for c in p] for p in pts.points]}


def pointset_from_json(obj: dict) -> PointSet:
    try:
        dim = int(obj["dim"])
        points = tuple(Vector(parse_scalar(c) for c in p)
                       for p in obj["points"])
    except (KeyError, TypeError) as exc:
        raise ValueError("point set JSON needs 'dim' and 'points'") from exc
    return PointSet(dim, points)


def chain_to_json(body: SymmetricBody, chain: ChainResult) -> dict:
    return {"indices": list(chain.indices),
            "points": [[format_scalar(c) for c in p] for p in chain.points],
            "lambdas": [format_scalar(l) for l in chain.lambdas],
            "target": chain.target,
            "guaranteed": chain.guaranteed,
            "verified": verify_chain(body, chain)}
