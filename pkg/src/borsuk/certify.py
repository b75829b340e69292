"""Assemble the verified facts into partition lower-bound certificates.

A certificate for dimension ``n`` records a subset ``S`` of the minimal shell
whose image spans an affine space of dimension at most ``n`` and still has the
full diameter. Any smaller-diameter piece has at most ``cap`` points, so at
least ``ceil(|S| / cap)`` pieces are needed; if that exceeds ``n + 1`` the
Borsuk bound fails in dimension ``n``.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import __version__
from .census import (IncidenceCensus, build_census, expected_total_pair_edges,
                     expected_total_triple_edges, select_best_pair, select_best_triple,
                     subset_K, subset_L, subset_N)
from .diameter import (SMALLER_DIAMETER_CAP, find_diameter_witness, pair_histogram,
                       row_histograms, row_to_dict)
from .embedding import (PHI_DENOM, affine_dimension, constraints_for_L, constraints_for_M,
                        constraints_for_pair, constraints_for_triple, features,
                        squared_distance_scaled)
from .golay import GolayCode, build_code, octads
from .leech import N_MIN_VECTORS, SHAPE_COUNTS, PointSet, enumerate_min_vectors, shape_codes

SUPPORTED_DIMS = (321, 322)
# per-base-point dot counts over the whole shell, self-pair included
EXPECTED_ROW = {-32: 1, -16: 4600, -8: 47104, 0: 93150, 8: 47104, 16: 4600, 32: 1}


class VerificationLevel(enum.Enum):
    QUICK = "quick"
    FULL = "full"


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def parts_lower_bound(size: int, cap: int) -> int:
    if cap < 1:
        raise ValueError("cap must be positive")
    if size < 0:
        raise ValueError("size must be non-negative")
    return -(-size // cap)


@dataclass
class Certificate:
    claim_dimension: int
    subset_size: int
    cap: int
    parts_lower_bound: int
    affine_dimension: int
    diameter_preserved: bool
    census_facts: dict
    code_facts: dict
    tool_version: str
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(**d)

    @classmethod
    def load(cls, path) -> "Certificate":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() + "\n")


class Verdict(NamedTuple):
    ok: bool
    reasons: list

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: Certificate) -> Verdict:
    """Re-check the arithmetic inside a certificate without rerunning anything."""
    reasons = []
    if cert.claim_dimension not in SUPPORTED_DIMS:
        reasons.append("unsupported claim dimension")
    if cert.cap != SMALLER_DIAMETER_CAP:
        reasons.append("cap differs from cited bound")
    if cert.cap < 1 or cert.parts_lower_bound != parts_lower_bound(cert.subset_size, max(cert.cap, 1)):
        reasons.append("ceiling mismatch")
    if cert.affine_dimension > cert.claim_dimension:
        reasons.append("dimension exceeds claim")
    if not cert.diameter_preserved:
        reasons.append("diameter not preserved")
    if cert.parts_lower_bound <= cert.claim_dimension + 1:
        reasons.append("bound does not exceed n + 1")

    cf, gf = cert.census_facts, cert.code_facts
    try:
        shapes = {int(k): v for k, v in cf["shape_counts"].items()}
        if sum(shapes.values()) != N_MIN_VECTORS:
            reasons.append("shape counts do not sum to 196560")
        if cf["total_triple_edges"] != expected_total_triple_edges(shapes):
            reasons.append("triple edge total mismatch")
        if cf["total_pair_edges"] != expected_total_pair_edges(shapes):
            reasons.append("pair edge total mismatch")
        if cf["min_triple_count"] * 2024 > cf["total_triple_edges"] or cf["max_triple_count"] * 2024 < cf["total_triple_edges"]:
            reasons.append("triple counts inconsistent with average")
        if cf["min_pair_count"] * 276 > cf["total_pair_edges"] or cf["max_pair_count"] * 276 < cf["total_pair_edges"]:
            reasons.append("pair counts inconsistent with average")
        sel = cf["selected_count"]
        if cert.subset_size != sel:
            reasons.append("subset size differs from census count")
        if sel != (cf["max_triple_count"] if cert.claim_dimension == 321 else cf["max_pair_count"]):
            reasons.append("selected coordinates are not a maximiser")
        dist = {int(k): v for k, v in gf["weight_distribution"].items()}
        if gf["codewords"] != 4096 or sum(dist.values()) != 4096 or gf["octads"] != dist.get(8):
            reasons.append("code facts inconsistent")
    except (KeyError, TypeError, AttributeError) as exc:
        reasons.append(f"malformed facts: {exc}")
    return Verdict(not reasons, reasons)


class Pipeline:
    """Lazily built shared state: code, shell, features and census."""

    def __init__(self, workers: int | None = None):
        self.workers = workers

    @cached_property
    def code(self) -> GolayCode:
        return build_code()

    @cached_property
    def M(self) -> PointSet:
        return enumerate_min_vectors(self.code)

    @cached_property
    def features(self) -> np.ndarray:
        return features(self.M.points)

    @cached_property
    def census(self) -> IncidenceCensus:
        return build_census(self.M, self.workers)

    @cached_property
    def triple(self):
        return select_best_triple(self.census)

    @cached_property
    def pair(self):
        return select_best_pair(self.census)

    @cached_property
    def N(self) -> PointSet:
        return subset_N(self.M, self.triple)

    @cached_property
    def K(self) -> PointSet:
        return subset_K(self.M, self.pair)

    @cached_property
    def L(self) -> PointSet:
        return subset_L(self.M)

    def subset_features(self, name: str) -> np.ndarray:
        return features(getattr(self, name).points)

    def constraints(self, name: str):
        return {
            "M": constraints_for_M,
            "N": lambda: constraints_for_triple(self.triple),
            "K": lambda: constraints_for_pair(self.pair),
            "L": constraints_for_L,
        }[name]()

    def affine_dimension(self, name: str) -> int:
        feats = self.features if name == "M" else self.subset_features(name)
        return affine_dimension(feats, self.constraints(name))

    def code_facts(self) -> dict:
        dist = self.code.weight_distribution()
        return {
            "codewords": len(self.code),
            "weight_distribution": {str(k): v for k, v in dist.items()},
            "octads": len(octads(self.code)),
        }

    def census_facts(self, dim: int) -> dict:
        c = self.census
        tags, counts = np.unique(shape_codes(self.M.points), return_counts=True)
        facts = {
            "shape_counts": {str(int(t)): int(n) for t, n in zip(tags, counts)},
            "total_triple_edges": c.total_triple_edges,
            "min_triple_count": int(c.triple_counts.min()),
            "max_triple_count": int(c.triple_counts.max()),
            "total_pair_edges": c.total_pair_edges,
            "min_pair_count": int(c.pair_counts.min()),
            "max_pair_count": int(c.pair_counts.max()),
        }
        if dim == 321:
            facts["selected_coordinates"] = list(self.triple)
            facts["selected_count"] = c.triple_count(self.triple)
        else:
            facts["selected_coordinates"] = list(self.pair)
            facts["selected_count"] = c.pair_count(self.pair)
        return facts

    def check_dot_structure(self, level: VerificationLevel, n_base: int = 100, seed: int = 0) -> None:
        """Per-point dot histogram (QUICK: sampled base points; FULL: every unordered pair)."""
        n = len(self.M)
        if level is VerificationLevel.FULL:
            hist = pair_histogram(self.M, workers=self.workers)
            want = {d: n * c // 2 for d, c in EXPECTED_ROW.items() if d != 32}
            if hist.counts != want:
                raise PipelineError("dot structure", f"pair histogram {hist.counts} != {want}")
            return
        rows = np.random.default_rng(seed).choice(n, size=min(n_base, n), replace=False)
        for r, h in zip(rows, row_histograms(self.M, rows)):
            if row_to_dict(h) != EXPECTED_ROW:
                raise PipelineError("dot structure", f"base point {int(r)}: {row_to_dict(h)}")


def build_certificate(dim: int, level: VerificationLevel = VerificationLevel.QUICK,
                      pipeline: Pipeline | None = None, seed: int = 0) -> Certificate:
    if dim not in SUPPORTED_DIMS:
        raise ValueError(f"unsupported dimension {dim}; choose from {SUPPORTED_DIMS}")
    level = VerificationLevel(level)
    t0 = time.perf_counter()
    pl = pipeline or Pipeline()

    code_facts = pl.code_facts()
    if code_facts["codewords"] != 4096 or code_facts["octads"] != 759:
        raise PipelineError("golay", f"unexpected code facts {code_facts}")
    shapes = {int(s): int(c) for s, c in zip(*np.unique(shape_codes(pl.M.points), return_counts=True))}
    if shapes != SHAPE_COUNTS:
        raise PipelineError("leech", f"shape counts {shapes}")
    pl.check_dot_structure(level, seed=seed)

    census_facts = pl.census_facts(dim)
    if census_facts["total_triple_edges"] != expected_total_triple_edges(SHAPE_COUNTS):
        raise PipelineError("census", "triple edge total disagrees with shape formula")

    name = "N" if dim == 321 else "K"
    subset = getattr(pl, name)
    if len(subset) != census_facts["selected_count"]:
        raise PipelineError("subset", f"|{name}| = {len(subset)} but census says {census_facts['selected_count']}")
    try:
        adim = pl.affine_dimension(name)
    except RuntimeError as exc:
        raise PipelineError("affine dimension", str(exc)) from exc

    if level is VerificationLevel.FULL:
        hist = pair_histogram(subset, workers=pl.workers)
        preserved = max(squared_distance_scaled(d) for d in hist.counts) == PHI_DENOM
    else:
        preserved = find_diameter_witness(subset) is not None
    if not preserved:
        raise PipelineError("diameter", f"{name} does not realise the full diameter")

    cert = Certificate(
        claim_dimension=dim,
        subset_size=len(subset),
        cap=SMALLER_DIAMETER_CAP,
        parts_lower_bound=parts_lower_bound(len(subset), SMALLER_DIAMETER_CAP),
        affine_dimension=adim,
        diameter_preserved=preserved,
        census_facts=census_facts,
        code_facts=code_facts,
        tool_version=__version__,
        elapsed=round(time.perf_counter() - t0, 3),
    )
    verdict = verify_certificate(cert)
    if not verdict:
        raise PipelineError("certificate", "; ".join(verdict.reasons))
    return cert
