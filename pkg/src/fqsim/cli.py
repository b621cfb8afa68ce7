"""Command-line interface.

Every subcommand prints a single JSON object (sweeps print JSON lines)
on stdout.  Exit codes:
    0  success
    2  a guarantee the counting argument makes failed to hold (should
       never happen), or a witness failed verification
    3  input error (bad files, bad parameters, mismatched sets)
    4  an enumeration or scan cap was exceeded
    1  a search legitimately found too small an intersection while the
       size guarantee did not apply
"""

from __future__ import annotations

import argparse
import json
import sys

from .configurations import (
    EdgeSet,
    edge_preset,
    find_det_similar,
    find_similar_config,
    similarity_threshold,
    sphere_experiment,
    verify_det_similarity,
    verify_similarity,
    DetSimilarityWitness,
    SimilarityWitness,
)
from .errors import (
    EnumerationCapExceeded,
    FqsimError,
    InsufficientIntersection,
    ScanCapExceeded,
    VerificationFailed,
)
from .field import make_field
from .groups import orthogonal_group, special_linear_group, translations
from .harness import (
    SweepConfig,
    __version__,
    file_digest,
    load_pointset,
    random_pointset,
    write_sweep,
)
from .intersection import exhaustive_pairs_audit, max_intersection


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _emit_error(exc: Exception, **extra) -> None:
    out = {"error": type(exc).__name__, "message": str(exc)}
    out.update(extra)
    _emit(out)


def _build_group(kind: str, q: int, d: int, radius, cap: int):
    if kind == "translations":
        return translations(q, d, cap=cap)
    if kind == "orthogonal":
        return orthogonal_group(q, d, radius=radius, cap=cap)
    if kind == "special-linear":
        return special_linear_group(q, d, cap=cap)
    raise ValueError(f"unknown group kind {kind!r}")


def cmd_enumerate_group(args) -> int:
    group = _build_group(args.kind, args.q, args.d, args.radius, args.cap)
    out = group.describe()
    if args.dump:
        out["elements"] = [g.to_json() for g in group.elements]
    _emit(out)
    return 0


def cmd_verify_bound(args) -> int:
    group = _build_group(args.group, args.q, args.d, args.radius, args.cap)
    if args.exhaustive_subsets:
        audit = exhaustive_pairs_audit(group)
        out = {"mode": "exhaustive-subsets", "group": group.describe()}
        out.update(audit.to_json())
        _emit(out)
        bad = audit.bound_violations + (audit.double_count_mismatches or 0)
        return 2 if bad else 0
    if not args.set_e or not args.set_h:
        raise ValueError("verify-bound needs --set-e and --set-h (or --exhaustive-subsets)")
    e_set = load_pointset(args.set_e)
    h_set = load_pointset(args.set_h)
    report = max_intersection(group, e_set, h_set,
                              want_histogram=args.histogram, jobs=args.jobs)
    out = report.to_json()
    out["double_count_ok"] = report.double_count_ok if report.transitive else None
    out["input_digests"] = {"set_e": file_digest(args.set_e), "set_h": file_digest(args.set_h)}
    _emit(out)
    if report.transitive and (not report.satisfies_bound or not report.double_count_ok):
        return 2
    return 0


def _edge_set_from_option(option: str, k: int) -> EdgeSet:
    if option.startswith("pairs:"):
        path = option[len("pairs:"):]
        pairs = []
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                i, j = (int(c) for c in line.split(","))
                pairs.append((i, j))
        return EdgeSet(k, pairs)
    return edge_preset(option, k)


def _points_for(args):
    field = make_field(args.q)
    if args.set:
        points = load_pointset(args.set)
        if points.field.q != args.q or points.dim != args.d:
            raise ValueError(
                f"point-set file declares q={points.field.q} d={points.dim}, "
                f"flags say q={args.q} d={args.d}"
            )
        return field, points, {"set": file_digest(args.set)}
    if args.random is None:
        raise ValueError("provide --set FILE or --random N")
    return field, random_pointset(field, args.d, args.random, args.seed), {}


def cmd_find_similar(args) -> int:
    field, points, digests = _points_for(args)
    ratio = field(args.r)
    edges = _edge_set_from_option(args.edges, args.k)
    threshold = similarity_threshold(field, args.d, args.k)
    try:
        witness = find_similar_config(points, ratio, args.k, edges)
    except InsufficientIntersection as exc:
        met = threshold.met_by(len(points))
        _emit_error(exc, best_count=exc.best_count, needed=exc.needed,
                    meets_threshold=met, set_size=len(points))
        return 2 if met else 1
    out = witness.to_json()
    out["meets_threshold"] = threshold.met_by(len(points))
    out["best_count"] = witness.report.best_count
    if digests:
        out["input_digests"] = digests
    _emit(out)
    return 0


def cmd_find_det_similar(args) -> int:
    field, points, digests = _points_for(args)
    ratio = field(args.r)
    threshold = similarity_threshold(field, args.d, args.k)
    try:
        witness = find_det_similar(points, ratio, args.k, jobs=args.jobs)
    except InsufficientIntersection as exc:
        met = threshold.met_by(len(points))
        _emit_error(exc, best_count=exc.best_count, needed=exc.needed,
                    meets_threshold=met, set_size=len(points))
        return 2 if met else 1
    out = witness.to_json()
    out["meets_threshold"] = threshold.met_by(len(points))
    out["best_count"] = witness.report.best_count
    if digests:
        out["input_digests"] = digests
    _emit(out)
    return 0


def cmd_sphere_experiment(args) -> int:
    e_set = load_pointset(args.set_e) if args.set_e else None
    h_set = load_pointset(args.set_h) if args.set_h else None
    result = sphere_experiment(args.q, args.d, args.radius, args.k,
                               e_set=e_set, h_set=h_set, jobs=args.jobs)
    _emit(result.to_json())
    return 0 if result.guarantee_holds else 2


def cmd_sweep(args) -> int:
    ratios = "all-squares" if args.r == "all-squares" else tuple(
        int(v) for v in args.r.split(",")
    )
    size = "threshold" if args.size == "threshold" else int(args.size)
    config = SweepConfig(
        qs=tuple(int(v) for v in args.qs.split(",")),
        d=args.d,
        ks=tuple(int(v) for v in args.ks.split(",")),
        ratios=ratios,
        trials=args.trials,
        base_seed=args.seed,
        size=size,
        kind=args.kind,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            summary = write_sweep(config, fh, jobs=args.jobs)
    else:
        summary = write_sweep(config, sys.stdout, jobs=args.jobs)
    return 2 if summary["violations"] else 0


def cmd_verify_witness(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    kind = obj.get("kind")
    if kind == "similarity":
        check = verify_similarity(SimilarityWitness.from_json(obj))
    elif kind == "det-similarity":
        check = verify_det_similarity(DetSimilarityWitness.from_json(obj))
    else:
        raise ValueError(f"unknown witness kind {kind!r}")
    _emit({"verified": check.ok, "reasons": list(check.reasons),
           "input_digest": file_digest(args.file)})
    return 0 if check.ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqsim",
        description="Exact group-action intersection bounds and similar "
                    "point configurations over prime fields.",
    )
    parser.add_argument("--version", action="version", version=f"fqsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate-group", help="enumerate a group and describe its action")
    p.add_argument("--kind", required=True,
                   choices=["translations", "orthogonal", "special-linear"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--radius", type=int, default=None,
                   help="act on this sphere instead of the full space (orthogonal only)")
    p.add_argument("--cap", type=int, default=10 ** 8)
    p.add_argument("--dump", action="store_true", help="include the element list")
    p.set_defaults(func=cmd_enumerate_group)

    p = sub.add_parser("verify-bound", help="maximize |H ∩ gE| and check the exact bound")
    p.add_argument("--group", required=True,
                   choices=["translations", "orthogonal", "special-linear"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--set-e", dest="set_e")
    p.add_argument("--set-h", dest="set_h")
    p.add_argument("--exhaustive-subsets", action="store_true",
                   help="audit every subset pair of the space instead of reading sets")
    p.add_argument("--histogram", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=10 ** 8)
    p.set_defaults(func=cmd_verify_bound)

    p = sub.add_parser("find-similar", help="find tuples similar under a square ratio")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--edges", default="simplex",
                   help="simplex|cycle|path|star|pairs:FILE")
    p.add_argument("--set", help="point-set file")
    p.add_argument("--random", type=int, help="sample this many random points instead")
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_find_similar)

    p = sub.add_parser("find-det-similar",
                       help="find tuples with proportional subset determinants")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set", help="point-set file")
    p.add_argument("--random", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_find_det_similar)

    p = sub.add_parser("sphere-experiment",
                       help="orthogonal-action intersection bound on a sphere")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set-e", dest="set_e")
    p.add_argument("--set-h", dest="set_h")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sphere_experiment)

    p = sub.add_parser("sweep", help="run a grid of similarity searches, one JSON line each")
    p.add_argument("--qs", required=True, help="comma-separated prime orders")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ks", required=True, help="comma-separated k values")
    p.add_argument("--r", default="all-squares",
                   help="'all-squares' or comma-separated residues")
    p.add_argument("--trials", type=int, default=1, help="seeded repetitions per cell")
    p.add_argument("--seed", type=int, default=1, help="base seed")
    p.add_argument("--size", default="threshold",
                   help="'threshold' or a fixed set size")
    p.add_argument("--kind", default="similarity",
                   choices=["similarity", "det-similarity"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write JSON lines here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify-witness", help="re-verify a serialized witness")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_witness)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EnumerationCapExceeded, ScanCapExceeded) as exc:
        _emit_error(exc)
        return 4
    except VerificationFailed as exc:
        _emit_error(exc, reasons=list(exc.reasons))
        return 2
    except FqsimError as exc:
        _emit_error(exc)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _emit_error(exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
