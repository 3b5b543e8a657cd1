import json
import random
from fractions import Fraction as F

import pytest

from minkarr import (Arrangement, Homothet, cube_arrangement, linf_ball)
from minkarr.instances import corpus_body, random_minkowski_arrangement
from minkarr.linalg import Vector
from minkarr.packing import (PairSlabs, SlabFamily, certificate_to_json,
                             family_from_arrangement,
                             lifted_packing_pipeline, slab_packing_check)


def V(*coords):
    return Vector([F(c) for c in coords])


def width_slabs(points, i, j):
    """Natural slab pair for (i, j): outer planes at the extremes of the
    point set along the direction j - i, inner planes through the points."""
    normal = points[j] - points[i]
    values = [normal.dot(p) for p in points]
    return PairSlabs(i, j, normal, min(values), max(values),
                     normal.dot(points[i]), normal.dot(points[j]))


def antipodal_family(points):
    pairs = []
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            pairs.append(width_slabs(points, i, j))
    return SlabFamily(tuple(points), tuple(pairs))


def test_square_vertices_certify_at_lam_1():
    pts = [V(0, 0), V(1, 0), V(0, 1), V(1, 1)]
    cert = slab_packing_check(antipodal_family(pts), F(1))
    assert cert.verdict
    assert cert.n == 4 and cert.bound_effective == 4
    assert cert.hull_volume == 1
    assert cert.volume_sum == 1  # tight: four quarter squares
    assert cert.failed_stage is None


def test_five_points_cannot_certify_at_lam_1():
    pts = [V(0, 0), V(1, 0), V(0, 1), V(1, 1), V(F(1, 2), F(1, 2))]
    cert = slab_packing_check(antipodal_family(pts), F(1))
    assert not cert.verdict
    assert cert.failed_stage in ("slab_ratio", "disjointness")
    assert cert.offending_pair is not None


def test_single_point_certificate():
    fam = SlabFamily((V(3, 4),), ())
    cert = slab_packing_check(fam, F(2))
    assert cert.verdict
    assert cert.affine_dim == 0
    assert cert.bound == 9


def test_segment_family_induction_branch():
    pts = [V(0, 0), V(1, 0)]
    cert = slab_packing_check(antipodal_family(pts), F(1))
    assert cert.verdict
    assert cert.induction_branch and cert.affine_dim == 1
    assert cert.bound_effective == 2


def test_ratio_stage_rejects_wide_slab():
    pts = [V(0, 0), V(1, 0)]
    bad = SlabFamily(tuple(pts),
                     (PairSlabs(0, 1, V(1, 0), F(-5), F(5), F(0), F(1)),))
    cert = slab_packing_check(bad, F(1))
    assert not cert.verdict and cert.failed_stage == "slab_ratio"


def test_containment_stage_rejects_escaping_point():
    pts = [V(0, 0), V(1, 0), V(5, 0)]
    fam = SlabFamily(tuple(pts),
                     (PairSlabs(0, 1, V(1, 0), F(0), F(1), F(0), F(1)),))
    cert = slab_packing_check(fam, F(1))
    assert not cert.verdict and cert.failed_stage == "slab_containment"


def test_lam_below_one_rejected():
    with pytest.raises(ValueError):
        slab_packing_check(SlabFamily((V(0, 0),), ()), F(1, 2))


def test_pipeline_cube():
    cert = lifted_packing_pipeline(cube_arrangement(2))
    assert cert.verdict
    assert cert.n == 9 and cert.bound == 27
    assert cert.affine_dim == 2 and cert.induction_branch
    # equal ratios flatten the lift; the packing is tight in the plane
    assert cert.volume_sum == cert.hull_volume
    # overlapping neighbors give width ratio 2, touching pairs give 1
    assert {r for _, _, r in cert.pair_ratios} == {1, 2}


def test_pipeline_random_minkowski():
    rng = random.Random(101)
    for t in range(12):
        arr = random_minkowski_arrangement(rng, body=corpus_body(rng, t),
                                           full_lift=True)
        cert = lifted_packing_pipeline(arr)
        assert cert.verdict, cert.failed_stage
        assert cert.affine_dim == 3
        assert cert.n <= 27
        assert cert.volume_sum == cert.n * cert.hull_volume / 27
        for _, _, rho in cert.pair_ratios:
            assert rho <= 2


def test_pipeline_rejects_minkowski_violation():
    body = linf_ball(2)
    arr = Arrangement(body, (Homothet(V(0, 0), F(2)), Homothet(V(1, 0), F(1))))
    cert = lifted_packing_pipeline(arr)
    assert not cert.verdict
    assert cert.failed_stage == "minkowski_property"
    assert cert.offending_pair == (0, 1)


def test_pipeline_rejects_non_intersecting():
    body = linf_ball(2)
    arr = Arrangement(body, (Homothet(V(0, 0), F(1)), Homothet(V(9, 0), F(1))))
    cert = lifted_packing_pipeline(arr)
    assert not cert.verdict
    assert cert.failed_stage == "pairwise_intersecting"


def test_pipeline_requires_planar_input():
    with pytest.raises(ValueError):
        lifted_packing_pipeline(cube_arrangement(3))


def test_family_from_arrangement_slabs_hold():
    arr = cube_arrangement(2)
    family, ratios = family_from_arrangement(arr)
    assert len(family.pairs) == 36
    assert len(ratios) == 36


def test_certificate_json():
    cert = lifted_packing_pipeline(cube_arrangement(2))
    blob = certificate_to_json(cert)
    text = json.dumps(blob, sort_keys=True)
    assert blob["verdict"] == "pass"
    assert blob["failed_stage"] is None
    assert "stages" in blob and text.count("passed") >= 5
    bad = lifted_packing_pipeline(
        Arrangement(linf_ball(2), (Homothet(V(0, 0), F(2)),
                                   Homothet(V(1, 0), F(1)))))
    blob2 = certificate_to_json(bad)
    assert blob2["verdict"] == "fail"
    assert blob2["failed_stage"] == "minkowski_property"
    assert blob2["offending_pair"] == [0, 1]
