"""Minimal vectors of the Leech lattice in integer coordinates.

A point is stored as ``X = 4*sqrt(2) * x`` with ``x`` a unit vector of the
lattice, so coordinates are integers in ``-4..4``, ``|X|^2 = 32`` and the unit
inner product is ``x.y = dot(X, Y) / 32``.

Membership (standard Conway-Sloane conditions, with ``m`` the common parity of
the coordinates):

* all coordinates are congruent to ``m`` mod 2;
* for even ``m`` the positions with ``X_i = 2 (mod 4)`` form a Golay codeword;
  for odd ``m`` the positions with ``X_i = 3 (mod 4)`` do;
* ``sum(X) = 4m (mod 8)``.

The three shapes of the minimal shell follow from these:

* ``(+-2^8, 0^16)`` on an octad. The sum condition forces an even number of
  minus signs, giving ``759 * 2^7 = 97152`` points.
* ``(-+3, +-1^23)``: start from ``1 - 2c`` for a codeword ``c`` and move one
  coordinate ``j`` by ``-4*sign``. The shift keeps the ``3 (mod 4)`` pattern
  equal to ``c`` and brings the sum to ``4 (mod 8)``; ``4096 * 24 = 98304``.
* ``(+-4^2, 0^22)`` on any pair, any signs: ``276 * 4 = 1104``.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .golay import N_COORDS, GolayCode, is_codeword, octads, support, syndromes

NORM = 32
ADMISSIBLE_DOTS = (-32, -16, -8, 0, 8, 16, 32)
SHAPE_COUNTS = {2: 97152, 3: 98304, 4: 1104}
N_MIN_VECTORS = 196560


class LatticeError(RuntimeError):
    pass


class ShapeClass(enum.IntEnum):
    SHAPE_2 = 2  # (+-2^8, 0^16)
    SHAPE_3 = 3  # (+-3, +-1^23)
    SHAPE_4 = 4  # (+-4^2, 0^22)


_SHAPE_SIGNATURES = {
    (0,) * 16 + (2,) * 8: ShapeClass.SHAPE_2,
    (1,) * 23 + (3,): ShapeClass.SHAPE_3,
    (0,) * 22 + (4,) * 2: ShapeClass.SHAPE_4,
}


def shape_of(p) -> ShapeClass:
    key = tuple(sorted(abs(int(v)) for v in p))
    try:
        return _SHAPE_SIGNATURES[key]
    except KeyError:
        raise LatticeError(f"not a minimal-vector shape: {tuple(int(v) for v in p)}") from None


def shape_codes(points: np.ndarray) -> np.ndarray:
    """Vectorised ``shape_of``: the largest absolute coordinate is the shape tag."""
    return np.abs(points).max(axis=1).astype(np.int8)


def validate_point(p, code: GolayCode) -> bool:
    x = [int(v) for v in p]
    if len(x) != N_COORDS or sum(v * v for v in x) != NORM:
        return False
    m = x[0] & 1
    if any((v & 1) != m for v in x):
        return False
    target = 3 if m else 2
    pattern = sum(1 << i for i, v in enumerate(x) if v % 4 == target)
    if not is_codeword(code, pattern):
        return False
    return sum(x) % 8 == 4 * m


def _pattern_masks(points: np.ndarray, residue: int) -> np.ndarray:
    hits = (np.mod(points, 4) == residue).astype(np.uint32)
    return (hits << np.arange(N_COORDS, dtype=np.uint32)).sum(axis=1, dtype=np.uint32)


def validate_points(points: np.ndarray, code: GolayCode) -> np.ndarray:
    """Vectorised ``validate_point`` over an ``(n, 24)`` array."""
    pts = points.astype(np.int32)
    ok = (pts * pts).sum(axis=1) == NORM
    m = pts[:, 0] & 1
    ok &= ((pts & 1) == m[:, None]).all(axis=1)
    pattern = np.where(m == 1, _pattern_masks(pts, 3), _pattern_masks(pts, 2))
    ok &= syndromes(code, pattern) == 0
    ok &= np.mod(pts.sum(axis=1), 8) == 4 * m
    return ok


@dataclass(frozen=True)
class PointSet:
    """Points as an ``(n, 24)`` int8 array in lexicographic row order."""

    points: np.ndarray
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.points.setflags(write=False)

    @classmethod
    def from_array(cls, arr) -> "PointSet":
        arr = np.ascontiguousarray(np.asarray(arr, dtype=np.int8).reshape(-1, N_COORDS))
        if len(arr):
            arr = arr[np.lexsort(arr.T[::-1])]
            if len(arr) > 1 and (arr[1:] == arr[:-1]).all(axis=1).any():
                raise LatticeError("duplicate points")
        return cls(arr)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def index_of(self, p) -> int:
        if self._index is None:
            object.__setattr__(self, "_index", {row.tobytes(): i for i, row in enumerate(self.points)})
        key = np.asarray(p, dtype=np.int8).tobytes()
        if key not in self._index:
            raise KeyError(tuple(int(v) for v in p))
        return self._index[key]

    def __contains__(self, p) -> bool:
        try:
            self.index_of(p)
        except KeyError:
            return False
        return True

    def subset(self, mask: np.ndarray) -> "PointSet":
        # a boolean selection of a sorted array stays sorted
        return PointSet(np.ascontiguousarray(self.points[mask]))

    def closed_under_negation(self) -> bool:
        neg = -self.points.astype(np.int16)
        neg = neg.astype(np.int8)
        neg = neg[np.lexsort(neg.T[::-1])]
        return np.array_equal(neg, self.points)

    def digest(self) -> str:
        return hashlib.sha256(self.points.tobytes()).hexdigest()


def _shape2(code: GolayCode) -> np.ndarray:
    signs = np.array([s for s in product((1, -1), repeat=8) if s.count(-1) % 2 == 0], dtype=np.int8)
    out = np.zeros((len(octads(code)) * len(signs), N_COORDS), dtype=np.int8)
    for k, octad in enumerate(octads(code)):
        out[k * len(signs):(k + 1) * len(signs), list(support(octad))] = 2 * signs
    return out


def _shape3(code: GolayCode) -> np.ndarray:
    base = (1 - 2 * code.as_array().astype(np.int8))  # (4096, 24)
    out = np.repeat(base, N_COORDS, axis=0)
    rows = np.arange(len(out))
    cols = np.tile(np.arange(N_COORDS), len(base))
    out[rows, cols] -= 4 * np.sign(out[rows, cols])
    return out


def _shape4() -> np.ndarray:
    out = []
    for i, j in combinations(range(N_COORDS), 2):
        for si, sj in product((4, -4), repeat=2):
            v = np.zeros(N_COORDS, dtype=np.int8)
            v[i], v[j] = si, sj
            out.append(v)
    return np.array(out, dtype=np.int8)


def enumerate_min_vectors(code: GolayCode) -> PointSet:
    """All 196560 minimal vectors, sorted lexicographically."""
    parts = [_shape2(code), _shape3(code), _shape4()]
    for shape, part in zip((2, 3, 4), parts):
        if len(part) != SHAPE_COUNTS[shape]:
            raise LatticeError(f"shape {shape}: built {len(part)} points")
    arr = np.concatenate(parts)
    bad = ~validate_points(arr, code)
    if bad.any():
        raise LatticeError(f"constructed point fails membership: {arr[np.argmax(bad)].tolist()}")
    return PointSet.from_array(arr)


def dot(p, q) -> int:
    return int(np.dot(np.asarray(p, dtype=np.int32), np.asarray(q, dtype=np.int32)))


def dot_histogram_from(points: np.ndarray, base) -> dict[int, int]:
    """Histogram of ``dot(base, q)`` over every ``q`` in ``points`` (including base itself)."""
    d = points.astype(np.int32) @ np.asarray(base, dtype=np.int32)
    vals, counts = np.unique(d, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def export_csv(ps: PointSet, path) -> None:
    np.savetxt(path, ps.points, fmt="%d", delimiter=",")


def import_csv(path) -> PointSet:
    arr = np.loadtxt(path, dtype=np.int64, delimiter=",", ndmin=2)
    if arr.shape[1] != N_COORDS:
        raise LatticeError(f"expected {N_COORDS} columns, got {arr.shape[1]}")
    if np.abs(arr).max(initial=0) > 4:
        raise LatticeError("coordinate out of range")
    return PointSet.from_array(arr)
