"""Invariant suites run by ``borsuk verify``.

Each suite returns a list of ``Check`` records rather than raising, so a run
reports every violated invariant at once.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

import numpy as np

from .certify import (EXPECTED_ROW, Pipeline, PipelineError, VerificationLevel,
                      build_certificate, parts_lower_bound, verify_certificate)
from .diameter import (SMALLER_DIAMETER_CAP, ExternalBoundViolation, find_diameter_witness,
                       greedy_smaller_diameter_subset, pair_histogram, squared_diameter)
from .embedding import ADMISSIBLE_DOTS, PHI_DENOM, squared_distance_scaled
from .golay import build_code, octads, steiner_coverage
from .leech import N_MIN_VECTORS, SHAPE_COUNTS, enumerate_min_vectors, shape_codes, validate_points


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def golay_suite(pl: Pipeline) -> list[Check]:
    code = pl.code
    dist = code.weight_distribution()
    cov = steiner_coverage(code)
    return [
        Check("golay.codewords", len(code) == 4096, f"{len(code)}"),
        Check("golay.weights", dist == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}, f"{dist}"),
        Check("golay.octads", len(octads(code)) == 759, f"{len(octads(code))}"),
        Check("golay.steiner", cov == {1: comb(24, 5)}, f"{cov}"),
    ]


def leech_suite(pl: Pipeline) -> list[Check]:
    M = pl.M
    tags, counts = np.unique(shape_codes(M.points), return_counts=True)
    shapes = {int(t): int(c) for t, c in zip(tags, counts)}
    again = enumerate_min_vectors(build_code())
    return [
        Check("leech.shapes", shapes == SHAPE_COUNTS, f"{shapes}"),
        Check("leech.total", len(M) == N_MIN_VECTORS, f"{len(M)}"),
        Check("leech.valid", bool(validate_points(M.points, pl.code).all())),
        Check("leech.negation", M.closed_under_negation()),
        Check("leech.deterministic", again.points.tobytes() == M.points.tobytes(), M.digest()[:16]),
    ]


def dot_suite(pl: Pipeline, level: VerificationLevel, seed: int = 0) -> list[Check]:
    try:
        pl.check_dot_structure(level, seed=seed)
        return [Check(f"dots.{level.value}", True, f"row histogram {EXPECTED_ROW}")]
    except PipelineError as exc:
        return [Check(f"dots.{level.value}", False, str(exc))]


def census_suite(pl: Pipeline) -> list[Check]:
    c = pl.census
    return [
        Check("census.triple_edges", c.total_triple_edges == 235642176, f"{c.total_triple_edges}"),
        Check("census.triples_uniform", bool((c.triple_counts == 116424).all()),
              f"min {c.triple_counts.min()} max {c.triple_counts.max()}"),
        Check("census.average", c.total_triple_edges == 116424 * comb(24, 3)),
        Check("census.pair_edges", c.total_pair_edges == 39505536, f"{c.total_pair_edges}"),
        Check("census.pairs_uniform", bool((c.pair_counts == 143136).all()),
              f"min {c.pair_counts.min()} max {c.pair_counts.max()}"),
        Check("census.selection", tuple(pl.triple) == (0, 1, 2) and tuple(pl.pair) == (0, 1),
              f"triple {tuple(pl.triple)} pair {tuple(pl.pair)}"),
    ]


def subset_suite(pl: Pipeline) -> list[Check]:
    return [
        Check("subset.N", len(pl.N) == 116424, f"{len(pl.N)}"),
        Check("subset.K", len(pl.K) == 143136, f"{len(pl.K)}"),
        Check("subset.L", len(pl.L) == 93150, f"{len(pl.L)}"),
        Check("subset.N_negation", pl.N.closed_under_negation()),
    ]


def affine_suite(pl: Pipeline) -> list[Check]:
    out = []
    for name, want in (("M", 323), ("N", 321), ("K", 322), ("L", 298)):
        try:
            got = pl.affine_dimension(name)
            out.append(Check(f"affine.{name}", got == want, f"{got}"))
        except RuntimeError as exc:
            out.append(Check(f"affine.{name}", False, str(exc)))
    return out


def diameter_suite(pl: Pipeline, level: VerificationLevel) -> list[Check]:
    argmax = [d for d in ADMISSIBLE_DOTS if squared_distance_scaled(d) == PHI_DENOM]
    out = [
        Check("diameter.argmax", argmax == [-8, 0], f"{argmax}"),
        Check("diameter.M", squared_diameter(pl.M) == PHI_DENOM),
    ]
    for name in ("N", "K", "L"):
        w = find_diameter_witness(getattr(pl, name))
        out.append(Check(f"diameter.{name}_preserved", w is not None, f"witness {w}"))
    if level is VerificationLevel.FULL:
        hist = pair_histogram(pl.N, workers=pl.workers)
        ok = hist.total == comb(len(pl.N), 2) and max(squared_distance_scaled(d) for d in hist.counts) == PHI_DENOM
        out.append(Check("diameter.N_full_scan", ok, f"{hist.counts}"))
    return out


def bounds_suite(pl: Pipeline, level: VerificationLevel) -> list[Check]:
    out = [
        Check("bounds.321", parts_lower_bound(116424, SMALLER_DIAMETER_CAP) == 333),
        Check("bounds.322", parts_lower_bound(143136, SMALLER_DIAMETER_CAP) == 409),
    ]
    for dim in (321, 322):
        try:
            cert = build_certificate(dim, level, pipeline=pl)
            v = verify_certificate(cert)
            out.append(Check(f"certificate.{dim}", bool(v), f"bound {cert.parts_lower_bound}"))
        except PipelineError as exc:
            out.append(Check(f"certificate.{dim}", False, str(exc)))
    return out


def greedy_suite(pl: Pipeline, seeds: int = 20, seed0: int = 0) -> list[Check]:
    sizes = []
    for s in range(seed0, seed0 + seeds):
        try:
            sub = greedy_smaller_diameter_subset(pl.M, s)
        except ExternalBoundViolation as exc:
            return [Check("greedy.cap", False, str(exc))]
        if find_diameter_witness(sub) is not None:
            return [Check("greedy.independent", False, f"seed {s}")]
        sizes.append(len(sub))
    return [Check("greedy.cap", max(sizes) <= SMALLER_DIAMETER_CAP, f"sizes {min(sizes)}..{max(sizes)}")]


SUITES = ("golay", "leech", "dots", "census", "subsets", "affine", "diameter", "bounds", "greedy")


def run_all(level: VerificationLevel, pl: Pipeline | None = None, seed: int = 0, log=print) -> list[Check]:
    pl = pl or Pipeline()
    runners = {
        "golay": lambda: golay_suite(pl),
        "leech": lambda: leech_suite(pl),
        "dots": lambda: dot_suite(pl, level, seed),
        "census": lambda: census_suite(pl),
        "subsets": lambda: subset_suite(pl),
        "affine": lambda: affine_suite(pl),
        "diameter": lambda: diameter_suite(pl, level),
        "bounds": lambda: bounds_suite(pl, level),
        "greedy": lambda: greedy_suite(pl, seed0=seed),
    }
    results = []
    for name in SUITES:
        t0 = time.perf_counter()
        checks = runners[name]()
        for c in checks:
            log(c.line())
        log(f"      {name}: {time.perf_counter() - t0:.1f}s")
        results += checks
    return results
