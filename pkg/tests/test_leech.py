import numpy as np
import pytest
from hypothesis import given, strategies as st

from borsuk.golay import build_code, mask_from_support, octads, support
from borsuk.leech import (ADMISSIBLE_DOTS, LatticeError, PointSet, ShapeClass, dot,
                          dot_histogram_from, enumerate_min_vectors, export_csv, import_csv,
                          shape_codes, shape_of, validate_point, validate_points)

from helpers import shell

EXPECTED_ROW = {32: 1, 16: 4600, 8: 47104, 0: 93150, -8: 47104, -16: 4600, -32: 1}


def test_shape_counts(M):
    tags, counts = np.unique(shape_codes(M.points), return_counts=True)
    assert dict(zip(tags.tolist(), counts.tolist())) == {2: 97152, 3: 98304, 4: 1104}
    assert len(M) == 97152 + 98304 + 1104 == 196560


def test_norms(M):
    assert ((M.points.astype(np.int32) ** 2).sum(axis=1) == 32).all()


def test_every_point_validates(M, code):
    assert validate_points(M.points, code).all()
    rng = np.random.default_rng(0)
    for i in rng.choice(len(M), 500, replace=False):
        assert validate_point(M[i], code)


def test_no_duplicates_and_sorted(M):
    rows = [tuple(r) for r in M.points]
    assert len(set(rows)) == len(rows)
    assert rows == sorted(rows)


def test_closed_under_negation(M):
    assert M.closed_under_negation()


def test_enumeration_is_byte_identical(M):
    again = enumerate_min_vectors(build_code())
    assert again.points.tobytes() == M.points.tobytes()
    assert again.digest() == M.digest()


@pytest.mark.parametrize("p, shape", [
    ((2,) * 8 + (0,) * 16, ShapeClass.SHAPE_2),
    ((-3,) + (1,) * 23, ShapeClass.SHAPE_3),
    ((4, 4) + (0,) * 22, ShapeClass.SHAPE_4),
])
def test_shape_of(p, shape):
    assert shape_of(p) is shape


def test_shape_of_rejects_garbage():
    with pytest.raises(LatticeError):
        shape_of((4,) + (0,) * 23)


def test_shape_codes_agree_with_shape_of(M):
    rng = np.random.default_rng(3)
    idx = rng.choice(len(M), 2000, replace=False)
    assert [int(shape_of(M[i])) for i in idx] == shape_codes(M.points[idx]).tolist()


def test_validate_rejects_wrong_norm(code):
    assert not validate_point((4,) + (0,) * 23, code)


def test_validate_rejects_non_octad_support(code):
    octs = set(octads(code))
    rng = np.random.default_rng(5)
    while True:
        sup = sorted(rng.choice(24, 8, replace=False).tolist())
        if mask_from_support(sup) not in octs:
            break
    p = np.zeros(24, dtype=int)
    p[sup] = 2
    assert not validate_point(p, code)
    # the same signs on an octad pass
    q = np.zeros(24, dtype=int)
    q[list(support(next(iter(octs))))] = 2
    assert validate_point(q, code)


def test_validate_rejects_odd_minus_count_on_octad(code):
    p = np.zeros(24, dtype=int)
    sup = list(support(octads(code)[0]))
    p[sup] = 2
    p[sup[0]] = -2
    assert not validate_point(p, code)


def test_validate_rejects_wrong_sign_of_three(code):
    # (+3, 1^23): the 3 mod 4 pattern is {0}, not a codeword
    assert not validate_point((3,) + (1,) * 23, code)
    assert validate_point((-3,) + (1,) * 23, code)


def test_dot_examples(M):
    p = M[12345]
    assert dot(p, p) == 32
    assert dot(p, -p.astype(int)) == -32


@pytest.mark.parametrize("base", [0, 1, 777, 50000, 98303, 150000, 196559])
def test_dot_histogram_single_base(M, base):
    assert dot_histogram_from(M.points, M[base]) == EXPECTED_ROW


def test_dot_histogram_sampled_base_points(M):
    pts = M.points.astype(np.int32)
    rng = np.random.default_rng(2024)
    idx = rng.choice(len(M), 100, replace=False)
    g = pts @ pts[idx].T
    for col in g.T:
        vals, counts = np.unique(col, return_counts=True)
        assert dict(zip(vals.tolist(), counts.tolist())) == EXPECTED_ROW
    assert set(np.unique(g).tolist()) <= set(ADMISSIBLE_DOTS)


@given(st.integers(0, 196559), st.data())
def test_lattice_closure_of_differences(i, data):
    """p - q and p + q stay in the shell when their norm is 32 (a lattice property,
    independent of the membership rules used to build the shell)."""
    M = shell()
    p = M.points[i].astype(np.int16)
    d = M.points.astype(np.int16) @ p
    for target, sign in ((16, -1), (-16, 1)):
        j = data.draw(st.sampled_from(np.flatnonzero(d == target).tolist()))
        r = p + sign * M.points[j].astype(np.int16)
        assert (r * r).sum() == 32
        assert r.astype(np.int8) in M


def test_csv_roundtrip(M, tmp_path):
    sub = M.subset(np.arange(len(M)) % 97 == 0)
    path = tmp_path / "vectors.csv"
    export_csv(sub, path)
    first = path.read_text().splitlines()[0]
    assert first == ",".join(str(int(v)) for v in sub[0])
    back = import_csv(path)
    assert back.points.tobytes() == sub.points.tobytes()


def test_csv_rejects_bad_width(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2,3\n")
    with pytest.raises(LatticeError):
        import_csv(path)


def test_pointset_rejects_duplicates():
    p = np.zeros((2, 24), dtype=np.int8)
    with pytest.raises(LatticeError):
        PointSet.from_array(p)


def test_index_of(M):
    for i in (0, 42, 196559):
        assert M.index_of(M[i]) == i
    assert (np.zeros(24, dtype=np.int8)) not in M
