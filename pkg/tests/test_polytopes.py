import random
from fractions import Fraction as F

import pytest

from minkarr.linalg import Vector
from minkarr.polytopes import (ConvexPolytope, LowerDimensional, hull,
                               interiors_disjoint, overlap_probe, shrink,
                               volume)


def V(*coords):
    return Vector([F(c) for c in coords])


def square(a, b):
    """Axis box [a,b]^2 as a hull."""
    pts = [V(a, a), V(a, b), V(b, a), V(b, b)]
    h = hull(pts)
    assert isinstance(h, ConvexPolytope)
    return h


def test_hull_square():
    h = square(0, 1)
    assert len(h.vertices) == 4
    assert len(h.facets) == 4
    assert volume(h) == 1


def test_hull_interior_point_dropped():
    pts = [V(0, 0), V(0, 1), V(1, 0), V(1, 1), V(F(1, 2), F(1, 2))]
    h = hull(pts)
    assert len(h.vertices) == 4


def test_hull_collinear_flag():
    flag = hull([V(0, 0), V(1, 1), V(2, 2)])
    assert isinstance(flag, LowerDimensional)
    assert flag.affine_dim == 1


def test_hull_cube_and_simplex_volumes():
    cube_pts = [V(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    h = hull(cube_pts)
    assert len(h.vertices) == 8
    assert len(h.facets) == 6
    assert volume(h) == 1
    simplex = hull([V(0, 0, 0), V(1, 0, 0), V(0, 1, 0), V(0, 0, 1)])
    assert volume(simplex) == F(1, 6)


def test_hull_1d():
    h = hull([Vector([F(3)]), Vector([F(-1)]), Vector([F(2)])])
    assert volume(h) == 4


def test_hull_octahedron_with_coplanar_extra():
    pts = [V(1, 0, 0), V(-1, 0, 0), V(0, 1, 0), V(0, -1, 0),
           V(0, 0, 1), V(0, 0, -1)]
    h = hull(pts)
    assert len(h.facets) == 8
    assert volume(h) == F(4, 3)
    # a point on a facet plane must not become a vertex
    pts2 = pts + [V(F(1, 3), F(1, 3), F(1, 3))]
    h2 = hull(pts2)
    assert len(h2.vertices) == 6
    assert volume(h2) == F(4, 3)


def test_shrink_examples():
    h = square(0, 2)
    copy = shrink(h, V(0, 0), F(1))
    assert volume(copy) == 1  # [0,1]^2
    assert all(h.contains(v) for v in copy.vertices)
    assert any(v == V(0, 0) for v in copy.vertices)  # shares the center vertex
    assert volume(copy) == volume(h) / (1 + 1) ** 2


def test_shrink_validates_inputs():
    h = square(0, 1)
    with pytest.raises(ValueError):
        shrink(h, V(5, 5), F(1))
    with pytest.raises(ValueError):
        shrink(h, V(0, 0), F(1, 2))


def test_interiors_disjoint_examples():
    a = square(0, 1)
    b = square(1, 2)
    assert interiors_disjoint(a, b)       # shared edge only
    c = square(0, 2)
    d = hull([V(1, 1), V(1, 3), V(3, 1), V(3, 3)])
    assert not interiors_disjoint(c, d)


def test_interiors_disjoint_3d():
    a = hull([V(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    b = hull([V(x, y, z) for x in (1, 2) for y in (0, 1) for z in (0, 1)])
    assert interiors_disjoint(a, b)
    c = hull([V(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    d = shrink(c, V(1, 1, 1), F(1))
    assert not interiors_disjoint(c, d)


def test_disjointness_symmetric_and_probe_consistent():
    rng = random.Random(77)
    base = square(0, 2)
    for _ in range(12):
        cx = F(rng.randint(0, 4), 2)
        cy = F(rng.randint(0, 4), 2)
        lam = F(rng.randint(2, 4), 2)
        p1 = shrink(base, V(cx, cy), lam) if base.contains(V(cx, cy)) else base
        p2 = shrink(base, V(0, 0), lam)
        d12 = interiors_disjoint(p1, p2)
        assert d12 == interiors_disjoint(p2, p1)
        hits = overlap_probe(p1, p2, samples=20_000, seed=3)
        if d12:
            assert hits == 0
        else:
            assert hits > 0


def test_monte_carlo_probe_contract():
    a = square(0, 1)
    b = square(1, 2)
    assert overlap_probe(a, b, samples=100_000, seed=0) == 0
