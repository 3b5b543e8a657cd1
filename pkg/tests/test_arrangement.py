import json
import math
import random
from fractions import Fraction as F

import pytest

from minkarr import (Arrangement, ChainPropertyError, Homothet, SearchConfig,
                     arrangement_from_json, arrangement_size_bound,
                     arrangement_to_json, chain_cardinality_bound,
                     chain_to_arrangement, center_in_interior,
                     cube_arrangement, find_intersection_violation,
                     find_minkowski_violation, intersects,
                     is_minkowski_arrangement, is_pairwise_intersecting,
                     linf_ball, l1_ball, partition_classes,
                     search_arrangement)
from minkarr.bodies import BallBody
from minkarr.linalg import Vector


SQUARE = linf_ball(2)
DIAMOND = l1_ball(2)


def H(center, ratio):
    return Homothet(Vector([F(c) for c in center]), F(ratio))


def test_intersects_examples():
    assert not intersects(SQUARE, H((0, 0), 1), H((3, 0), 1))
    assert intersects(SQUARE, H((0, 0), 1), H((2, 0), 1))  # touching counts
    assert intersects(DIAMOND, H((0, 0), 1), H((1, 1), 2))


def test_center_in_interior_examples():
    assert not center_in_interior(SQUARE, H((0, 0), 1), Vector((1, 0)))
    assert center_in_interior(SQUARE, H((0, 0), 1), Vector((0, 0)))
    assert center_in_interior(SQUARE, H((0, 0), 2), Vector((1, 1)))


def test_minkowski_predicate():
    same = Arrangement(SQUARE, (H((0, 0), 1), H((0, 0), 1)))
    assert find_minkowski_violation(same) == (0, 1)
    assert not is_minkowski_arrangement(same)
    single = Arrangement(SQUARE, (H((0, 0), 1),))
    assert is_minkowski_arrangement(single)
    assert is_pairwise_intersecting(single)


def test_pairwise_intersecting_predicate():
    far = Arrangement(SQUARE, (H((0, 0), 1), H((5, 0), 1)))
    assert find_intersection_violation(far) == (0, 1)
    assert not is_pairwise_intersecting(far)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_cube_arrangement(d):
    arr = cube_arrangement(d)
    assert len(arr) == 3 ** d
    assert is_minkowski_arrangement(arr)
    assert is_pairwise_intersecting(arr)


def test_chain_to_arrangement_line():
    seg = linf_ball(1)
    arr = chain_to_arrangement([Vector([0]), Vector([1])], [F(1)], seg)
    assert [m.ratio for m in arr.members] == [1, 1]
    assert is_pairwise_intersecting(arr)


def test_chain_to_arrangement_triangle_l2():
    ball = BallBody(2)
    pts = [Vector((0.0, 0.0)), Vector((1.0, 0.0)),
           Vector((0.5, math.sqrt(3) / 2))]
    arr = chain_to_arrangement(pts, [1.0, 1.0], ball)
    assert is_pairwise_intersecting(arr)


def test_chain_property_violation_reports_pair():
    seg = linf_ball(1)
    with pytest.raises(ChainPropertyError) as err:
        chain_to_arrangement([Vector([0]), Vector([1]), Vector([5])],
                             [F(1), F(1)], seg)
    assert err.value.pair == (0, 2)


def test_chain_output_always_intersects():
    rng = random.Random(3)
    for _ in range(25):
        # valid chains: each point at gauge lam_i from every later point
        lam = [F(rng.randint(2, 6), 2)]
        pts = [Vector((F(0), F(0))), Vector((lam[0], F(0)))]
        arr = chain_to_arrangement(pts, lam, SQUARE)
        assert is_pairwise_intersecting(arr)


def test_partition_examples():
    assert partition_classes([F(3, 10)], 2)[0].l == 2
    assert partition_classes([F(3, 10)], 2)[0].k == 1
    lab = partition_classes([1], 2)[0]
    assert (lab.l, lab.k) == (1, 1)
    lab = partition_classes([F(1, 2)], 3)[0]
    assert (lab.l, lab.k) == (3, 1)


def test_partition_rescales_when_needed():
    labels = partition_classes([F(4), F(2)], 2)
    # after dividing by 4 the values are 1 and 1/2
    assert (labels[0].l, labels[0].k) == (1, 1)
    assert (labels[1].l, labels[1].k) == (2, 1)


def test_partition_requires_positive():
    with pytest.raises(ValueError):
        partition_classes([F(0)], 2)
    with pytest.raises(ValueError):
        partition_classes([F(1)], 1)


def test_partition_invariants_d3():
    rng = random.Random(17)
    d = 3
    mu = 2 ** (-1 / (d - 1))
    lams = [F(rng.randint(1, 4096), 4096) for _ in range(600)]
    labels = partition_classes(lams, d)
    for lam, lab in zip(lams, labels):
        assert 1 <= lab.l <= d and lab.k >= 1
        exponent = (lab.k - 1) * d + lab.l
        lo, hi = mu ** exponent, mu ** (exponent - 1)
        x = float(lam)
        assert lo - 1e-9 < x <= hi + 1e-9
    for a in range(0, len(lams), 37):
        for b in range(a + 1, len(lams), 53):
            la, lb = labels[a], labels[b]
            q = lams[a] / lams[b]
            q = max(q, 1 / q)
            if (la.l, la.k) == (lb.l, lb.k):
                assert float(q) <= 1 / mu + 1e-9
            elif la.l == lb.l:
                assert q > 2


def test_size_bound_values():
    assert arrangement_size_bound(1) == 9
    assert arrangement_size_bound(2) == 27
    assert arrangement_size_bound(3) == 81


def test_chain_cardinality_bound():
    assert math.isinf(chain_cardinality_bound(2))
    # frozen from an independent high-precision evaluation of
    # 3 * (3 + sqrt(2))^4
    assert chain_cardinality_bound(3) == pytest.approx(1139.0285706997465,
                                                       rel=1e-12)
    v20 = chain_cardinality_bound(20)
    assert 20 * 3 ** 21 < v20 < 20 * 3.1 ** 21
    with pytest.raises(ValueError):
        chain_cardinality_bound(1)


def test_search_warm_start_keeps_cube():
    arr = search_arrangement(SQUARE, 2, SearchConfig(seed=0, iterations=30),
                             warm_start=cube_arrangement(2))
    assert len(arr) >= 9
    assert len(arr) <= arrangement_size_bound(2)
    assert is_minkowski_arrangement(arr)
    assert is_pairwise_intersecting(arr)


def test_search_zero_iterations_single_member():
    arr = search_arrangement(SQUARE, 2, SearchConfig(seed=1, iterations=0))
    assert len(arr) == 1


def test_search_deterministic():
    a = search_arrangement(DIAMOND, 2, SearchConfig(seed=4, iterations=60))
    b = search_arrangement(DIAMOND, 2, SearchConfig(seed=4, iterations=60))
    assert arrangement_to_json(a) == arrangement_to_json(b)
    c = search_arrangement(DIAMOND, 2, SearchConfig(seed=5, iterations=60))
    assert len(c) >= 1


def test_arrangement_json_roundtrip():
    arr = cube_arrangement(2)
    blob = json.dumps(arrangement_to_json(arr), sort_keys=True)
    back = arrangement_from_json(json.loads(blob))
    assert len(back) == 9
    assert is_minkowski_arrangement(back)
    with pytest.raises(ValueError):
        arrangement_from_json({"homothets": []})
