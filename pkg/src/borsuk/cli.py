"""Command-line entry point.

Exit codes: 0 verified, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _workers(args) -> int | None:
    return args.workers or (int(os.environ["BORSUK_WORKERS"]) if os.environ.get("BORSUK_WORKERS") else None)


def cmd_verify(args) -> int:
    from .certify import Pipeline, VerificationLevel
    from .checks import run_all

    level = VerificationLevel(args.level)
    t0 = time.perf_counter()
    results = run_all(level, Pipeline(_workers(args)), seed=args.seed)
    failed = [c for c in results if not c.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {time.perf_counter() - t0:.1f}s")
    for c in failed:
        print(f"violated: {c.name} {c.detail}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_certify(args) -> int:
    from .certify import Pipeline, PipelineError, VerificationLevel, build_certificate

    try:
        cert = build_certificate(args.dim, VerificationLevel(args.level), Pipeline(_workers(args)), seed=args.seed)
    except PipelineError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        cert.save(args.out)
    print(cert.to_json())
    return EXIT_OK


def cmd_check(args) -> int:
    from .certify import Certificate, verify_certificate

    try:
        cert = Certificate.load(args.path)
    except (OSError, ValueError, TypeError) as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    verdict = verify_certificate(cert)
    if verdict:
        print(f"certificate valid: f({cert.claim_dimension}) >= {cert.parts_lower_bound}")
        return EXIT_OK
    for r in verdict.reasons:
        print(f"violated: {r}", file=sys.stderr)
    return EXIT_FAIL


def cmd_export(args) -> int:
    from .certify import Pipeline
    from .census import export_census_csv
    from .embedding import export_features_csv, features
    from .golay import export_codewords
    from .leech import export_csv

    pl = Pipeline(_workers(args))
    subset = getattr(pl, args.subset)
    if args.what == "vectors":
        export_csv(subset, args.out)
    elif args.what == "features":
        export_features_csv(features(subset.points), args.out)
    elif args.what == "census":
        for p in export_census_csv(pl.census, args.out):
            print(p)
    elif args.what == "codewords":
        export_codewords(pl.code, args.out)
    return EXIT_OK


def build_report(pl, level) -> dict:
    from .certify import build_certificate
    from .diameter import find_diameter_witness, squared_diameter

    certs = {str(d): build_certificate(d, level, pipeline=pl).to_dict() for d in (321, 322)}
    return {
        "tool_version": __version__,
        "level": level.value,
        "code": pl.code_facts(),
        "census": pl.census_facts(321),
        "subset_sizes": {n: len(getattr(pl, n)) for n in "MNKL"},
        "affine_dimensions": {n: pl.affine_dimension(n) for n in "MNKL"},
        "squared_diameter_scaled": {"M": squared_diameter(pl.M)},
        "diameter_witnesses": {n: find_diameter_witness(getattr(pl, n)) for n in "NKL"},
        "certificates": certs,
    }


def cmd_report(args) -> int:
    from .certify import Pipeline, PipelineError, VerificationLevel

    try:
        report = build_report(Pipeline(_workers(args)), VerificationLevel(args.level))
    except PipelineError as exc:
        print(f"report failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    with open(args.json, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
    print(args.json)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="borsuk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--workers", type=int, default=None, help="worker count (default: $BORSUK_WORKERS or all cores)")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--level", choices=["quick", "full"], default="quick")
    v.add_argument("--seed", type=int, default=0, help="seed for sampling and the greedy heuristic")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certify", help="emit a partition lower-bound certificate")
    c.add_argument("--dim", type=int, choices=[321, 322], required=True)
    c.add_argument("--level", choices=["quick", "full"], default="quick")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_certify)

    k = sub.add_parser("check", help="re-verify a saved certificate")
    k.add_argument("path")
    k.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="write vectors, features, census or codewords as CSV")
    e.add_argument("--what", choices=["vectors", "features", "census", "codewords"], required=True)
    e.add_argument("--format", choices=["csv"], default="csv")
    e.add_argument("--subset", choices=["M", "N", "K", "L"], default="M")
    e.add_argument("--out", required=True, help="file path (directory for census)")
    e.set_defaults(func=cmd_export)

    r = sub.add_parser("report", help="dump every verified fact as JSON")
    r.add_argument("--json", required=True)
    r.add_argument("--level", choices=["quick", "full"], default="quick")
    r.set_defaults(func=cmd_report)
    return p


def run_cli(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())
