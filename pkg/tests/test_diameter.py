from collections import Counter
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from borsuk.diameter import (DotHistogram, ExternalBoundViolation, InadmissibleDot,
                             SMALLER_DIAMETER_CAP, export_histogram_csv, find_diameter_witness,
                             greedy_smaller_diameter_subset, is_diameter_preserving, pair_histogram,
                             row_histograms, row_to_dict, squared_diameter)
from borsuk.leech import PointSet

from conftest import RUN_FULL
from helpers import shell


def brute_pairs(points):
    pts = [tuple(int(v) for v in p) for p in points]
    return Counter(sum(a * b for a, b in zip(p, q)) for i, p in enumerate(pts) for q in pts[i + 1:])


def antipodal(M, i=100):
    p = M.points[i]
    return PointSet.from_array(np.stack([p, -p]))


@settings(max_examples=15)
@given(st.integers(2, 400), st.integers(0, 2**32 - 1))
def test_pair_histogram_matches_brute_force(n, seed):
    M = shell()
    idx = np.sort(np.random.default_rng(seed).choice(len(M), n, replace=False))
    pts = M.points[idx]
    hist = pair_histogram(pts, block=37)
    assert hist.counts == dict(sorted(brute_pairs(pts).items()))
    assert hist.total == comb(n, 2)


def test_pair_histogram_workers(M):
    pts = M.points[:3000]
    assert pair_histogram(pts, block=256, workers=1) == pair_histogram(pts, block=256, workers=3)


def test_small_sets(M):
    assert pair_histogram(antipodal(M)).counts == {-32: 1}
    assert pair_histogram(M.points[:1]).counts == {}
    assert squared_diameter(antipodal(M)) == 512
    with pytest.raises(ValueError):
        squared_diameter(M.points[:1])


def test_inadmissible_dot_is_an_error():
    fake = np.zeros((2, 24), dtype=np.int8)
    fake[0, 0] = 3
    fake[1, 0] = 1  # dot 3
    with pytest.raises(InadmissibleDot):
        pair_histogram(fake)
    with pytest.raises(InadmissibleDot):
        row_histograms(fake, [0])


def test_row_histograms_sampled(M):
    rows = np.random.default_rng(4).choice(len(M), 120, replace=False)
    hists = row_histograms(M, rows)
    want = {-32: 1, -16: 4600, -8: 47104, 0: 93150, 8: 47104, 16: 4600, 32: 1}
    assert all(row_to_dict(h) == want for h in hists)


def test_diameter_graph_degree(M):
    rows = np.random.default_rng(5).choice(len(M), 100, replace=False)
    hists = row_histograms(M, rows)
    assert (hists[:, 32] + hists[:, 32 - 8] == 140254).all()


def test_squared_diameter_of_M(M):
    assert squared_diameter(M) == 1280


def test_diameter_witnesses(pipeline):
    for name in "NKL":
        w = find_diameter_witness(getattr(pipeline, name))
        assert w is not None
        sub = getattr(pipeline, name)
        d = int(sub[w[0]].astype(int) @ sub[w[1]].astype(int))
        assert d in (0, -8)
        assert is_diameter_preserving(sub, 1280)


def test_antipodal_pair_not_diameter_preserving(M):
    assert not is_diameter_preserving(antipodal(M), 1280)
    assert is_diameter_preserving(antipodal(M), 512)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_subset_diameter_never_exceeds_full(M, seed):
    idx = np.sort(np.random.default_rng(seed).choice(len(M), 50, replace=False))
    sub = M.points[idx]
    sd = squared_diameter(sub)
    assert sd <= 1280
    assert (sd == 1280) == is_diameter_preserving(sub, 1280)


@pytest.mark.parametrize("seed", range(5))
def test_greedy_output_is_independent_and_maximal(M, seed):
    sub = greedy_smaller_diameter_subset(M, seed)
    assert 1 <= len(sub) <= SMALLER_DIAMETER_CAP
    hist = pair_histogram(sub)
    assert 0 not in hist.counts and -8 not in hist.counts
    g = M.points.astype(np.int32) @ sub.points.astype(np.int32).T
    undominated = ~((g == 0) | (g == -8)).any(axis=1)
    assert undominated.sum() == len(sub)


def test_greedy_is_deterministic(M):
    a = greedy_smaller_diameter_subset(M, 42)
    b = greedy_smaller_diameter_subset(M, 42)
    assert a.points.tobytes() == b.points.tobytes()


def test_greedy_small_inputs(M):
    single = M.points[:1]
    assert np.array_equal(greedy_smaller_diameter_subset(single, 0).points, single)
    assert len(greedy_smaller_diameter_subset(antipodal(M), 0)) == 2


def test_greedy_cap_violation_raises(M):
    with pytest.raises(ExternalBoundViolation):
        greedy_smaller_diameter_subset(M, 0, cap=5)


def test_histogram_export(tmp_path):
    path = tmp_path / "h.csv"
    export_histogram_csv(DotHistogram({0: 3, -32: 1}), path)
    assert path.read_text().splitlines() == ["dot,count", "-32,1", "0,3"]


@pytest.mark.slow
@pytest.mark.skipif(not RUN_FULL, reason="set BORSUK_FULL=1 for exhaustive scans")
def test_full_scan_over_N(pipeline):
    hist = pair_histogram(pipeline.N)
    assert hist.total == comb(116424, 2)
    assert max(1280 - d * d - 8 * d for d in hist.counts) == 1280
