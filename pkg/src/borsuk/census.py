"""Incidences between points and coordinate triples/pairs of equal absolute value."""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .golay import N_COORDS
from .leech import PointSet

TRIPLES = tuple(combinations(range(N_COORDS), 3))
PAIRS = tuple(combinations(range(N_COORDS), 2))
TRIPLE_INDEX = {t: n for n, t in enumerate(TRIPLES)}
PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}


class CoordinateTriple(NamedTuple):
    k: int
    l: int
    m: int


class CoordinatePair(NamedTuple):
    k: int
    l: int


def _checked(idx, n: int):
    idx = tuple(int(i) for i in idx)
    if len(idx) != n or any(not 0 <= i < N_COORDS for i in idx) or list(idx) != sorted(set(idx)):
        raise ValueError(f"need {n} strictly increasing indices in 0..23, got {idx}")
    return idx


def triple(k, l, m) -> CoordinateTriple:
    return CoordinateTriple(*_checked((k, l, m), 3))


def pair(k, l) -> CoordinatePair:
    return CoordinatePair(*_checked((k, l), 2))


@dataclass(frozen=True)
class IncidenceCensus:
    triple_counts: np.ndarray  # (2024,) in TRIPLES order
    pair_counts: np.ndarray  # (276,) in PAIRS order

    @property
    def total_triple_edges(self) -> int:
        return int(self.triple_counts.sum())

    @property
    def total_pair_edges(self) -> int:
        return int(self.pair_counts.sum())

    def triple_count(self, t) -> int:
        return int(self.triple_counts[TRIPLE_INDEX[tuple(t)]])

    def pair_count(self, pr) -> int:
        return int(self.pair_counts[PAIR_INDEX[tuple(pr)]])


def _group_combos(groups, size: int, index: dict) -> np.ndarray:
    out = [index[c] for g in groups if len(g) >= size for c in combinations(g, size)]
    return np.array(out, dtype=np.int64)


def _census_chunk(abs_points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    tri = np.zeros(len(TRIPLES), dtype=np.int64)
    prs = np.zeros(len(PAIRS), dtype=np.int64)
    if not len(abs_points):
        return tri, prs
    # points sharing an |value| pattern contribute identical increments
    patterns, mult = np.unique(abs_points, axis=0, return_counts=True)
    for pat, w in zip(patterns, mult):
        groups = [tuple(np.flatnonzero(pat == v)) for v in np.unique(pat)]
        np.add.at(tri, _group_combos(groups, 3, TRIPLE_INDEX), w)
        np.add.at(prs, _group_combos(groups, 2, PAIR_INDEX), w)
    return tri, prs


def default_workers() -> int:
    env = os.environ.get("BORSUK_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def build_census(ps: PointSet, workers: int | None = None) -> IncidenceCensus:
    """Count, for every triple and pair of coordinates, the points whose
    absolute values agree there.

    Each point adds ``C(s, 3)`` triples and ``C(s, 2)`` pairs per group of
    ``s`` coordinates with a common absolute value. Chunks over point ranges
    are summed, so the result does not depend on ``workers``.
    """
    workers = workers or default_workers()
    a = np.abs(ps.points)
    bounds = np.linspace(0, len(a), workers + 1).astype(int)
    chunks = [a[s:e] for s, e in zip(bounds[:-1], bounds[1:])]
    if workers == 1:
        parts = [_census_chunk(c) for c in chunks]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(_census_chunk, chunks))
    tri = sum((p[0] for p in parts), np.zeros(len(TRIPLES), dtype=np.int64))
    prs = sum((p[1] for p in parts), np.zeros(len(PAIRS), dtype=np.int64))
    return IncidenceCensus(tri, prs)


def expected_total_triple_edges(shape_counts: dict[int, int]) -> int:
    """Edge total from the shape counts alone: groups of sizes (8,16), (23,1), (22,2)."""
    return (shape_counts[2] * (comb(8, 3) + comb(16, 3))
            + shape_counts[3] * comb(23, 3)
            + shape_counts[4] * comb(22, 3))


def expected_total_pair_edges(shape_counts: dict[int, int]) -> int:
    return (shape_counts[2] * (comb(8, 2) + comb(16, 2))
            + shape_counts[3] * comb(23, 2)
            + shape_counts[4] * (comb(22, 2) + comb(2, 2)))


def select_best_triple(census: IncidenceCensus) -> CoordinateTriple:
    """Lexicographically smallest triple with the maximum count."""
    return CoordinateTriple(*TRIPLES[int(np.argmax(census.triple_counts))])


def select_best_pair(census: IncidenceCensus) -> CoordinatePair:
    return CoordinatePair(*PAIRS[int(np.argmax(census.pair_counts))])


def subset_N(ps: PointSet, t) -> PointSet:
    k, l, m = t
    a = np.abs(ps.points)
    return ps.subset((a[:, k] == a[:, l]) & (a[:, l] == a[:, m]))


def subset_K(ps: PointSet, pr) -> PointSet:
    k, l = pr
    a = np.abs(ps.points)
    return ps.subset(a[:, k] == a[:, l])


def subset_L(ps: PointSet, a: int = 0, b: int = 1) -> PointSet:
    """Points with equal signed coordinates ``a`` and ``b``."""
    return ps.subset(ps.points[:, a] == ps.points[:, b])


def export_census_csv(census: IncidenceCensus, out_dir) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tpath, ppath = out / "triples.csv", out / "pairs.csv"
    with open(tpath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "k", "l", "m", "count"])
        for n, (t, c) in enumerate(zip(TRIPLES, census.triple_counts)):
            w.writerow([n, *t, int(c)])
    with open(ppath, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "k", "l", "count"])
        for n, (p, c) in enumerate(zip(PAIRS, census.pair_counts)):
            w.writerow([n, *p, int(c)])
    return tpath, ppath
