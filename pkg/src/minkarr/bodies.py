"""Origin-symmetric convex bodies and their gauge machinery.

A body is the unit ball of the norm it induces: the gauge of x is the least
lambda >= 0 with x in lambda*K.  Three variants are supported:

* ``HPolytopeBody`` -- intersection of halfspaces a.x <= 1 (facets are stored
  in offset-1 canonical form), central symmetry means the facet list is
  closed under normal negation;
* ``VPolytopeBody`` -- convex hull of a vertex list closed under negation;
* ``BallBody`` -- the Euclidean unit ball (floating mode).

All bodies are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import lp, scalars
from .linalg import Vector, matrix_rank
from .scalars import Scalar, parse_scalar, format_scalar


class BodyError(ValueError):
    """Invalid body data (asymmetry, unboundedness, empty interior...)."""


class SymmetricBody:
    """Common interface; concrete bodies implement the four primitives."""

    dim: int

    def gauge(self, x: Vector) -> Scalar:
        raise NotImplementedError

    def support(self, a: Vector) -> Scalar:
        raise NotImplementedError

    def boundary_point(self, u: Vector) -> Vector:
        """The boundary point in direction u, i.e. u scaled to gauge 1."""
        self._check_dim(u)
        g = self.gauge(u)
        if scalars.eq(g, 0):
            raise ValueError("boundary_point needs a nonzero direction")
        return u / g

    def supporting_hyperplane(self, p: Vector) -> Tuple[Vector, Scalar]:
        raise NotImplementedError

    def is_exact(self) -> bool:
        return False

    def _check_dim(self, x: Vector) -> None:
        if x.dim != self.dim:
            raise ValueError("dimension mismatch: body is %d-dimensional, "
                             "vector is %d-dimensional" % (self.dim, x.dim))

    def to_json(self) -> dict:
        raise NotImplementedError


def _canonical_facet(normal: Vector, offset: Scalar) -> Vector:
    if scalars.le(offset, 0):
        raise BodyError("facet offsets must be positive (origin interior)")
    return normal / offset


class HPolytopeBody(SymmetricBody):
    """Bounded symmetric polytope given by facets a.x <= offset.

    Facets are normalized to offset 1 on construction, so ``facets`` is just
    the list of canonical normals.  The representation is assumed
    irredundant: every facet touches the body.  Constructors in this package
    (cube, cross-polytope, hull-derived conversions) guarantee that.
    """

    def __init__(self, dim: int, facets: Sequence[Tuple[Vector, Scalar]]):
        if dim < 1:
            raise BodyError("dimension must be positive")
        self.dim = dim
        normals: List[Vector] = []
        for normal, offset in facets:
            if normal.dim != dim:
                raise BodyError("facet normal dimension mismatch")
            if normal.is_zero():
                raise BodyError("zero facet normal")
            normals.append(_canonical_facet(normal, offset))
        self.facets: Tuple[Vector, ...] = tuple(normals)
        self._validate()

    def _validate(self) -> None:
        if not self.facets:
            raise BodyError("a polytope needs at least one facet pair")
        for a in self.facets:
            if not any((-a) == b for b in self.facets):
                raise BodyError("facet list is not closed under negation; "
                                "body would not be o-symmetric")
        if matrix_rank([f.coords for f in self.facets]) < self.dim:
            raise BodyError("facet normals do not span the space; "
                            "body would be unbounded")

    def is_exact(self) -> bool:
        return all(scalars.is_exact(*f.coords) for f in self.facets)

    def gauge(self, x: Vector) -> Scalar:
        self._check_dim(x)
        best: Scalar = 0
        for a in self.facets:
            v = a.dot(x)
            if scalars.gt(v, best):
                best = v
        return best if scalars.gt(best, 0) else 0

    def support(self, a: Vector) -> Scalar:
        self._check_dim(a)
        if a.is_zero():
            raise ValueError("support direction must be nonzero")
        value, _ = lp.simplex_max(list(a.coords),
                                  [f.coords for f in self.facets],
                                  [1] * len(self.facets))
        return value

    def supporting_hyperplane(self, p: Vector) -> Tuple[Vector, Scalar]:
        self._check_dim(p)
        if not scalars.eq(self.gauge(p), 1):
            raise ValueError("point is not on the boundary (gauge != 1)")
        active = [a for a in self.facets if scalars.eq(a.dot(p), 1)]
        # deterministic tie-break at vertices: lexicographically least normal
        best = min(active, key=lambda a: a.coords)
        return best, 1

    def to_json(self) -> dict:
        return {"dim": self.dim, "type": "hpoly",
                "facets": [{"normal": [format_scalar(c) for c in a.coords],
                            "offset": 1} for a in self.facets]}

    def __repr__(self) -> str:
        return "HPolytopeBody(dim=%d, facets=%d)" % (self.dim, len(self.facets))


class VPolytopeBody(SymmetricBody):
    """Symmetric polytope given as the hull of a vertex list.

    The gauge is the solution of a small linear program over the polar body;
    in dimension <= 3 a facet form is precomputed from the exact hull and
    used instead (the two routes agree, see the test suite).
    """

    def __init__(self, dim: int, vertices: Sequence[Vector]):
        if dim < 1:
            raise BodyError("dimension must be positive")
        self.dim = dim
        for v in vertices:
            if v.dim != dim:
                raise BodyError("vertex dimension mismatch")
        self.vertices: Tuple[Vector, ...] = tuple(vertices)
        self._validate()
        self._hform = self.as_hpolytope() if dim <= 3 else None

    def _validate(self) -> None:
        if not self.vertices:
            raise BodyError("a polytope needs vertices")
        for v in self.vertices:
            if not any((-v) == w for w in self.vertices):
                raise BodyError("vertex list is not closed under negation; "
                                "body would not be o-symmetric")
        if matrix_rank([v.coords for v in self.vertices]) < self.dim:
            raise BodyError("vertices do not span the space; "
                            "body would have empty interior")

    def is_exact(self) -> bool:
        return all(scalars.is_exact(*v.coords) for v in self.vertices)

    def as_hpolytope(self) -> HPolytopeBody:
        """Facet form of the same body; only available for dim <= 3."""
        if self.dim > 3:
            raise NotImplementedError("facet enumeration is out of scope "
                                      "beyond dimension 3")
        from .polytopes import hull, LowerDimensional
        h = hull(list(self.vertices))
        if isinstance(h, LowerDimensional):  # excluded by the rank check
            raise BodyError("vertex hull is lower-dimensional")
        return HPolytopeBody(self.dim, h.facets)

    def gauge_lp(self, x: Vector) -> Scalar:
        """Gauge via the polar-body linear program max x.a s.t. a.v <= 1."""
        self._check_dim(x)
        value, _ = lp.simplex_max(list(x.coords),
                                  [v.coords for v in self.vertices],
                                  [1] * len(self.vertices))
        return value

    def gauge(self, x: Vector) -> Scalar:
        if self._hform is not None:
            return self._hform.gauge(x)
        return self.gauge_lp(x)

    def support(self, a: Vector) -> Scalar:
        self._check_dim(a)
        if a.is_zero():
            raise ValueError("support direction must be nonzero")
        best = None
        for v in self.vertices:
            val = a.dot(v)
            if best is None or scalars.gt(val, best):
                best = val
        return best

    def supporting_hyperplane(self, p: Vector) -> Tuple[Vector, Scalar]:
        if self._hform is None:
            raise NotImplementedError("supporting hyperplanes need the facet "
                                      "form, unavailable beyond dimension 3")
        return self._hform.supporting_hyperplane(p)

    def to_json(self) -> dict:
        return {"dim": self.dim, "type": "vpoly",
                "vertices": [[format_scalar(c) for c in v.coords]
                             for v in self.vertices]}

    def __repr__(self) -> str:
        return "VPolytopeBody(dim=%d, vertices=%d)" % (self.dim, len(self.vertices))


class BallBody(SymmetricBody):
    """Euclidean unit ball; all derived quantities are floating point."""

    def __init__(self, dim: int):
        if dim < 1:
            raise BodyError("dimension must be positive")
        self.dim = dim

    def gauge(self, x: Vector) -> float:
        self._check_dim(x)
        return math.sqrt(float(x.norm_sq()))

    def support(self, a: Vector) -> float:
        self._check_dim(a)
        if a.is_zero():
            raise ValueError("support direction must be nonzero")
        return math.sqrt(float(a.norm_sq()))

    def supporting_hyperplane(self, p: Vector) -> Tuple[Vector, Scalar]:
        self._check_dim(p)
        if not scalars.eq(self.gauge(p), 1):
            raise ValueError("point is not on the boundary (gauge != 1)")
        return Vector(float(c) for c in p.coords), 1

    def to_json(self) -> dict:
        return {"dim": self.dim, "type": "ball"}

    def __repr__(self) -> str:
        return "BallBody(dim=%d)" % self.dim


def linf_ball(dim: int) -> HPolytopeBody:
    """The cube [-1, 1]^d, unit ball of the max norm."""
    facets = []
    for i in range(dim):
        e = [Fraction(0)] * dim
        e[i] = Fraction(1)
        facets.append((Vector(e), 1))
        facets.append((Vector([-c for c in e]), 1))
    return HPolytopeBody(dim, facets)


def l1_ball(dim: int) -> HPolytopeBody:
    """The cross-polytope, unit ball of the sum norm (2^d facets)."""
    facets = []
    for mask in range(2 ** dim):
        normal = Vector([Fraction(1) if (mask >> i) & 1 == 0 else Fraction(-1)
                         for i in range(dim)])
        facets.append((normal, 1))
    return HPolytopeBody(dim, facets)


def body_from_json(obj: dict) -> SymmetricBody:
    """Load a body from its JSON form; symmetry is validated and load fails
    loudly on any violation."""
    try:
        dim = int(obj["dim"])
        kind = obj["type"]
    except (KeyError, TypeError) as exc:
        raise BodyError("body JSON needs 'dim' and 'type'") from exc
    if kind == "ball":
        return BallBody(dim)
    if kind == "hpoly":
        facets = []
        for f in obj.get("facets", []):
            normal = Vector(parse_scalar(c) for c in f["normal"])
            facets.append((normal, parse_scalar(f.get("offset", 1))))
        return HPolytopeBody(dim, facets)
    if kind == "vpoly":
        vertices = [Vector(parse_scalar(c) for c in v)
                    for v in obj.get("vertices", [])]
        return VPolytopeBody(dim, vertices)
    raise BodyError("unknown body type %r" % (kind,))


def body_to_json(body: SymmetricBody) -> dict:
    return body.to_json()
