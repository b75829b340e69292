"""Distance structure of the embedded minimal vectors.

Only the integer dot ``d`` of two points matters: the scaled squared distance
``1280 - d^2 - 8d`` is largest (1280, a true squared distance of 2) exactly
for ``d in {0, -8}``. Those pairs are the edges of the diameter graph and a
subset has smaller diameter iff it is independent there.

Dot products are computed as float32 matrix products. Entries are at most 4
in absolute value over 24 coordinates, so every partial sum is an exact
small integer.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .census import default_workers
from .embedding import PHI_DENOM, squared_distance_scaled
from .leech import ADMISSIBLE_DOTS, PointSet

DIAMETER_DOTS = (0, -8)
# Largest smaller-diameter subset of the embedded minimal shell
# (Hinrichs 2002, Proposition 3(iii)); cited, not computed here.
SMALLER_DIAMETER_CAP = 350

_OFFSET = 32
_NBINS = 2 * _OFFSET + 1


class InadmissibleDot(RuntimeError):
    """A dot product outside {0, +-8, +-16, +-32}: the point set is not from the shell."""


class ExternalBoundViolation(RuntimeError):
    """A smaller-diameter subset larger than the cited cap."""


@dataclass
class DotHistogram:
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, d: int) -> int:
        return self.counts.get(d, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, DotHistogram):
            other = other.counts
        return {k: v for k, v in self.counts.items() if v} == {k: v for k, v in dict(other).items() if v}


def _as_f32(points) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(points, dtype=np.float32))


def _bins_to_counts(bins: np.ndarray) -> dict[int, int]:
    counts = {}
    for i in np.flatnonzero(bins):
        d = int(i) - _OFFSET
        if d not in ADMISSIBLE_DOTS:
            raise InadmissibleDot(f"dot value {d} occurs {int(bins[i])} times")
        counts[d] = int(bins[i])
    return dict(sorted(counts.items()))


def _gram_bins(block: np.ndarray, others: np.ndarray) -> np.ndarray:
    g = block @ others.T
    if np.abs(g).max(initial=0) > _OFFSET:
        raise InadmissibleDot("dot value outside [-32, 32]")
    return np.bincount((g.astype(np.int32) + _OFFSET).ravel(), minlength=_NBINS)


def _upper_block(pts: np.ndarray, s: int, e: int) -> np.ndarray:
    """Bins for pairs (i, j) with s <= i < e and i < j."""
    blk = pts[s:e]
    bins = _gram_bins(blk, pts[e:]) if e < len(pts) else np.zeros(_NBINS, dtype=np.int64)
    sq = (blk @ blk.T).astype(np.int32)
    iu = np.triu_indices(e - s, k=1)
    return bins + np.bincount(sq[iu] + _OFFSET, minlength=_NBINS)


def _blocks(n: int, size: int):
    return [(s, min(s + size, n)) for s in range(0, n, size)]


def pair_histogram(ps, block: int = 1024, workers: int | None = None) -> DotHistogram:
    """Exact counts of unordered pairs by dot value."""
    pts = _as_f32(ps.points if isinstance(ps, PointSet) else ps)
    n = len(pts)
    if n < 2:
        return DotHistogram()
    workers = workers or default_workers()
    spans = _blocks(n, block)
    total = np.zeros(_NBINS, dtype=np.int64)
    if workers == 1:
        for s, e in spans:
            total += _upper_block(pts, s, e)
    else:
        with ThreadPoolExecutor(workers) as pool:
            for b in pool.map(lambda se: _upper_block(pts, *se), spans):
                total += b
    return DotHistogram(_bins_to_counts(total))


def row_histograms(ps, rows, others=None, block: int = 256) -> np.ndarray:
    """Per-row dot counts, shape ``(len(rows), 65)``; column ``d + 32`` counts dot ``d``.

    ``others`` defaults to the whole set, so each row includes its self-pair.
    """
    pts = ps.points if isinstance(ps, PointSet) else np.asarray(ps)
    tgt = _as_f32(pts if others is None else others)
    base = _as_f32(pts[np.asarray(rows)])
    out = np.zeros((len(base), _NBINS), dtype=np.int64)
    for s, e in _blocks(len(base), block):
        g = (base[s:e] @ tgt.T).astype(np.int32)
        if np.abs(g).max(initial=0) > _OFFSET:
            raise InadmissibleDot("dot value outside [-32, 32]")
        g += _OFFSET + _NBINS * np.arange(e - s, dtype=np.int32)[:, None]
        out[s:e] = np.bincount(g.ravel(), minlength=_NBINS * (e - s)).reshape(e - s, _NBINS)
    bad = np.ones(_NBINS, dtype=bool)
    bad[[d + _OFFSET for d in ADMISSIBLE_DOTS]] = False
    if out[:, bad].any():
        raise InadmissibleDot(f"inadmissible dots in rows {np.flatnonzero(out[:, bad].any(axis=1))[:5]}")
    return out


def row_to_dict(row: np.ndarray) -> dict[int, int]:
    return _bins_to_counts(row)


def find_diameter_witness(ps, block: int = 512):
    """First pair (i, j), i < j, with dot in {0, -8}; None if there is none."""
    pts = _as_f32(ps.points if isinstance(ps, PointSet) else ps)
    # a tiny leading block usually finds a witness without a full row sweep
    spans = [(0, min(8, len(pts)))]
    spans += [(s, min(s + block, len(pts))) for s in range(spans[0][1], len(pts), block)]
    for s, e in spans:
        g = pts[s:e] @ pts[s:].T
        hit = (g == 0) | (g == -8)
        hit &= np.arange(s, len(pts))[None, :] > np.arange(s, e)[:, None]
        if hit.any():
            i, j = np.argwhere(hit)[0]
            return int(s + i), int(s + j)
    return None


def squared_diameter(ps) -> int:
    """Squared diameter of the embedded set, times 640."""
    if len(ps) < 2:
        raise ValueError("diameter needs at least two points")
    # 1280 is the largest value the distance form takes, so one witness settles it
    if find_diameter_witness(ps) is not None:
        return PHI_DENOM
    hist = pair_histogram(ps)
    return max(squared_distance_scaled(d) for d in hist.counts)


def is_diameter_preserving(subset, full_diam: int) -> bool:
    if len(subset) < 2:
        return False
    if full_diam == PHI_DENOM:
        return find_diameter_witness(subset) is not None
    return squared_diameter(subset) == full_diam


def greedy_smaller_diameter_subset(ps, seed: int, cap: int = SMALLER_DIAMETER_CAP,
                                   block: int = 2048) -> PointSet:
    """Greedy maximal independent set of the diameter graph in a seeded random order.

    Candidates are screened in blocks against the points already kept; the
    survivors of a block are then settled one at a time.
    """
    pts = ps.points if isinstance(ps, PointSet) else np.asarray(ps, dtype=np.int8)
    order = np.random.default_rng(seed).permutation(len(pts))
    f = _as_f32(pts)
    kept: list[int] = []
    kept_f = np.empty((0, f.shape[1]), dtype=np.float32)
    for s, e in _blocks(len(order), block):
        cand = order[s:e]
        if len(kept):
            g = f[cand] @ kept_f.T
            cand = cand[~((g == 0) | (g == -8)).any(axis=1)]
        for i in cand:
            g = kept_f @ f[i]
            if ((g == 0) | (g == -8)).any():
                continue
            kept.append(int(i))
            kept_f = np.vstack([kept_f, f[i]])
    if len(kept) > cap:
        raise ExternalBoundViolation(f"smaller-diameter subset of size {len(kept)} exceeds cap {cap}")
    return PointSet.from_array(pts[kept])


def is_smaller_diameter(ps) -> bool:
    return find_diameter_witness(ps) is None


def export_histogram_csv(hist: DotHistogram, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dot", "count"])
        for d in sorted(hist.counts):
            w.writerow([d, hist.counts[d]])
