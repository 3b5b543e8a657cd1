"""Command-line front end.

Subcommands: ``verify`` (arrangement predicates plus, in the plane, the full
lifted packing certificate), ``lift`` (per-pair shadow diagnostics, slab
verification, optional SVG), ``search`` (seeded local search for large
arrangements), ``kdist`` (spectra, grids, greedy chains).

Exit codes are a stable contract: 0 all checks pass, 1 a check failed, 2 the
input could not be parsed or was otherwise invalid.  Every report prints the
seed and scalar mode it ran under.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from . import scalars
from .arrangement import (Arrangement, Homothet, SearchConfig,
                          arrangement_from_json, arrangement_size_bound,
                          arrangement_to_json, find_intersection_violation,
                          find_minkowski_violation, search_arrangement)
from .bodies import body_from_json
from .diagram import DiagramSpec, render_projection_plane
from .kdistance import (chain_to_json, grid_set, greedy_chain,
                        pointset_from_json, pointset_to_json, spectrum,
                        verify_chain)
from .lifting import build_frame, pair_diagnostics, shadow
from .linalg import Vector
from .packing import certificate_to_json, lifted_packing_pipeline
from .scalars import format_scalar


class InputError(Exception):
    """Unusable input file or flag combination (exit code 2)."""


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc


def _dump_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _float_arrangement(arr: Arrangement) -> Arrangement:
    members = tuple(Homothet(Vector(float(c) for c in h.center),
                             float(h.ratio)) for h in arr.members)
    return Arrangement(arr.body, members)


def _apply_mode(args, arr: Optional[Arrangement]) -> Optional[Arrangement]:
    scalars.set_tolerance(args.eps)
    if arr is not None and args.mode == "float":
        return _float_arrangement(arr)
    return arr


def _banner(args) -> None:
    print("seed: %d" % getattr(args, "seed", 0))
    print("mode: %s  eps: %g" % (args.mode, args.eps))


def cmd_verify(args) -> int:
    try:
        arr = _apply_mode(args, arrangement_from_json(_load_json(args.arrangement)))
    except (InputError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    _banner(args)
    failed = False

    violation = find_minkowski_violation(arr)
    if violation is None:
        print("minkowski-arrangement: PASS")
    else:
        print("minkowski-arrangement: FAIL at pair (%d, %d)" % violation)
        failed = True
    violation = find_intersection_violation(arr)
    if violation is None:
        print("pairwise-intersecting: PASS")
    else:
        print("pairwise-intersecting: FAIL at pair (%d, %d)" % violation)
        failed = True

    cert_json = None
    if arr.dim == 2 and not failed:
        cert = lifted_packing_pipeline(arr)
        cert_json = certificate_to_json(cert)
        if cert.verdict:
            print("lifted-packing-certificate: PASS  %d <= %d"
                  % (cert.n, cert.bound))
        else:
            pair = cert.offending_pair
            where = " at pair (%d, %d)" % pair if pair else ""
            print("lifted-packing-certificate: FAIL stage %s%s"
                  % (cert.failed_stage, where))
            failed = True
    elif arr.dim != 2:
        print("lifted-packing-certificate: SKIP (needs a planar arrangement)")

    if args.certificate:
        payload = {"checks": {"minkowski": find_minkowski_violation(arr) is None,
                              "intersecting":
                              find_intersection_violation(arr) is None},
                   "seed": args.seed, "mode": args.mode,
                   "certificate": cert_json}
        _dump_json(args.certificate, payload)
        print("certificate written to %s" % args.certificate)
    print("verdict: %s" % ("FAIL" if failed else "PASS"))
    return 1 if failed else 0


def cmd_lift(args) -> int:
    try:
        arr = _apply_mode(args, arrangement_from_json(_load_json(args.arrangement)))
        i, j = args.pair
        if not (0 <= i < len(arr) and 0 <= j < len(arr)) or i == j:
            raise InputError("pair (%d, %d) is out of range for %d members"
                             % (i, j, len(arr)))
    except (InputError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    _banner(args)
    try:
        diag = pair_diagnostics(arr, i, j)
    except ValueError as exc:
        print("construction failed: %s" % exc, file=sys.stderr)
        return 1
    print("alphas: %s" % diag["alphas"])
    print("intervals: %s" % diag["intervals"])
    print("x: %s  u_i: %s  u_j: %s" % (diag["x"], diag["u_i"], diag["u_j"]))
    print("width ratio: %s" % diag["ratio"])
    print("slab offsets: k_ij=%s k_ji=%s g_ij=%s g_ji=%s"
          % (diag["slab"]["c_k_ij"], diag["slab"]["c_k_ji"],
             diag["slab"]["c_g_ij"], diag["slab"]["c_g_ji"]))
    ok = diag["slab_contains_all"]
    print("slab containment: %s" % ("PASS" if ok else
                                    "FAIL at member %s" % diag["slab_offender"]))
    if args.dump:
        _dump_json(args.dump, diag)
        print("diagnostics written to %s" % args.dump)
    if args.svg:
        frame = build_frame(arr, i, j)
        sd = shadow(arr, frame)
        svg = render_projection_plane(arr, frame, sd, DiagramSpec(pair=(i, j)))
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print("diagram written to %s" % args.svg)
    return 0 if ok else 1


def cmd_search(args) -> int:
    try:
        body = body_from_json(_load_json(args.body))
        scalars.set_tolerance(args.eps)
        warm = None
        if args.init:
            warm = arrangement_from_json(_load_json(args.init))
    except (InputError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    _banner(args)
    cfg = SearchConfig(seed=args.seed, iterations=args.iters)
    arr = search_arrangement(body, body.dim, cfg, warm_start=warm)
    bound = arrangement_size_bound(body.dim)
    print("best size: %d (bound 3^(d+1) = %d)" % (len(arr), bound))
    ok = (find_minkowski_violation(arr) is None
          and find_intersection_violation(arr) is None)
    print("re-verified: %s" % ("PASS" if ok else "FAIL"))
    if args.out:
        _dump_json(args.out, arrangement_to_json(arr))
        print("arrangement written to %s" % args.out)
    return 0 if ok else 1


def cmd_kdist(args) -> int:
    scalars.set_tolerance(args.eps)
    if args.kdist_cmd == "grid":
        pts = grid_set(args.d, args.k)
        print("grid {0..%d}^%d: %d points" % (args.k, args.d, len(pts)))
        if args.out:
            _dump_json(args.out, pointset_to_json(pts))
            print("point set written to %s" % args.out)
        return 0

    try:
        pts = pointset_from_json(_load_json(args.points))
        body = _choose_body(args, pts.dim)
    except (InputError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2

    if args.kdist_cmd == "spectrum":
        spec = spectrum(body, pts)
        print("distances: %d" % len(spec))
        for dist, mult in spec.entries:
            print("  %s  x%d" % (format_scalar(dist), mult))
        return 0

    # chain
    target = args.target
    if target is None:
        target = max(1, math.ceil(math.log(len(pts), args.k))) + 1 \
            if args.k > 1 else len(pts)
    try:
        chain = greedy_chain(body, pts, args.k, target)
    except ValueError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    verified = verify_chain(body, chain)
    print("chain length %d of target %d (guaranteed: %s)"
          % (len(chain), target, chain.guaranteed))
    print("lambdas: %s" % [format_scalar(l) for l in chain.lambdas])
    print("chain verification: %s" % ("PASS" if verified else "FAIL"))
    if args.out:
        _dump_json(args.out, chain_to_json(body, chain))
        print("chain written to %s" % args.out)
    return 0 if verified else 1


def _choose_body(args, dim: int):
    from .bodies import l1_ball, linf_ball, BallBody
    if args.body:
        return body_from_json(_load_json(args.body))
    if args.norm == "linf":
        return linf_ball(dim)
    if args.norm == "l1":
        return l1_ball(dim)
    return BallBody(dim)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minkarr",
        description="Verification toolkit for pairwise intersecting "
                    "Minkowski arrangements of symmetric convex homothets.")
    parser.add_argument("--mode", choices=("exact", "float"), default="exact",
                        help="keep rational scalars exact or coerce to floats")
    parser.add_argument("--eps", type=float, default=scalars.DEFAULT_TOLERANCE,
                        help="absolute tolerance for floating comparisons")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for all randomized components")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the arrangement predicates and, "
                                      "for planar input, the packing certificate")
    p.add_argument("arrangement", help="arrangement JSON file")
    p.add_argument("--certificate", help="write the full certificate JSON here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lift", help="shadow diagnostics and slab checks "
                                    "for one pair")
    p.add_argument("arrangement", help="arrangement JSON file")
    p.add_argument("--pair", nargs=2, type=int, required=True,
                   metavar=("I", "J"))
    p.add_argument("--svg", help="write the projection-plane diagram here")
    p.add_argument("--dump", help="write the pair diagnostics JSON here")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("search", help="seeded local search for large "
                                      "arrangements")
    p.add_argument("body", help="body JSON file")
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--init", help="warm-start arrangement JSON file")
    p.add_argument("--out", help="write the best arrangement here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("kdist", help="distance spectra, grids and chains")
    ksub = p.add_subparsers(dest="kdist_cmd", required=True)
    ps = ksub.add_parser("spectrum")
    ps.add_argument("points", help="point set JSON file")
    ps.add_argument("--body", help="body JSON file")
    ps.add_argument("--norm", choices=("linf", "l1", "l2"), default="linf")
    ps.set_defaults(func=cmd_kdist)
    pg = ksub.add_parser("grid")
    pg.add_argument("--d", type=int, required=True)
    pg.add_argument("--k", type=int, required=True)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_kdist)
    pc = ksub.add_parser("chain")
    pc.add_argument("points", help="point set JSON file")
    pc.add_argument("--k", type=int, required=True)
    pc.add_argument("--target", type=int)
    pc.add_argument("--body", help="body JSON file")
    pc.add_argument("--norm", choices=("linf", "l1", "l2"), default="linf")
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_kdist)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
