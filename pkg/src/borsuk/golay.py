"""Extended binary Golay code as 24-bit masks.

Bit ``i`` of a mask is coordinate ``i`` (0..23). The code is generated by the
12x24 matrix ``[I_12 | B]`` with ``B`` the classical bordered circulant built
from the quadratic residues mod 11 (complemented), written out below so the
codeword list is bit-exact reproducible::

    B = 110111000101
        101110001011
        011100010111
        111000101101
        110001011011
        100010110111
        000101101111
        001011011101
        010110111001
        101101110001
        011011100011
        111111111110

Row ``r`` of the generator has a 1 at coordinate ``r`` and ``B[r][j]`` at
coordinate ``12 + j``. ``B`` is symmetric and ``B B^T = I`` over GF(2), so the
parity-check matrix is ``[B^T | I_12]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

N_COORDS = 24
ALL_ONES = (1 << N_COORDS) - 1

B_ROWS = (
    "110111000101",
    "101110001011",
    "011100010111",
    "111000101101",
    "110001011011",
    "100010110111",
    "000101101111",
    "001011011101",
    "010110111001",
    "101101110001",
    "011011100011",
    "111111111110",
)


class GolayBuildError(RuntimeError):
    """The generator matrix failed an internal consistency check."""


def weight(mask: int) -> int:
    return bin(mask).count("1")


def support(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(N_COORDS) if mask >> i & 1)


def mask_from_support(coords) -> int:
    m = 0
    for i in coords:
        m |= 1 << i
    return m


def _generator_masks() -> tuple[int, ...]:
    rows = []
    for r, brow in enumerate(B_ROWS):
        m = 1 << r
        for j, bit in enumerate(brow):
            if bit == "1":
                m |= 1 << (12 + j)
        rows.append(m)
    return tuple(rows)


def _parity_check_masks() -> tuple[int, ...]:
    # row r of [B^T | I]: B^T[r][j] = B[j][r] at coordinate j, identity at 12 + r
    rows = []
    for r in range(12):
        m = 1 << (12 + r)
        for j in range(12):
            if B_ROWS[j][r] == "1":
                m |= 1 << j
        rows.append(m)
    return tuple(rows)


def _gf2_rank(masks) -> int:
    basis: list[int] = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
    return len(basis)


@dataclass(frozen=True)
class GolayCode:
    codewords: tuple[int, ...]
    generator: tuple[int, ...]
    parity_check: tuple[int, ...]
    _octads: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.codewords)

    def __contains__(self, mask: int) -> bool:
        return is_codeword(self, mask)

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for c in self.codewords:
            w = weight(c)
            dist[w] = dist.get(w, 0) + 1
        return dict(sorted(dist.items()))

    def as_array(self) -> np.ndarray:
        """Codewords as a (4096, 24) uint8 0/1 matrix, coordinate 0 first."""
        words = np.array(self.codewords, dtype=np.uint32)
        return ((words[:, None] >> np.arange(N_COORDS, dtype=np.uint32)) & 1).astype(np.uint8)


@lru_cache(maxsize=1)
def build_code() -> GolayCode:
    gen = _generator_masks()
    if _gf2_rank(gen) != 12:
        raise GolayBuildError("generator matrix does not have rank 12")
    check = _parity_check_masks()
    for g in gen:
        for h in check:
            if weight(g & h) & 1:
                raise GolayBuildError("generator row fails a parity check")

    words = [0]
    for g in gen:
        words += [w ^ g for w in words]
    codewords = tuple(sorted(words))
    octs = tuple(c for c in codewords if weight(c) == 8)
    return GolayCode(codewords=codewords, generator=gen, parity_check=check, _octads=octs)


def syndrome(code: GolayCode, mask: int) -> int:
    s = 0
    for r, h in enumerate(code.parity_check):
        s |= (weight(mask & h) & 1) << r
    return s


def is_codeword(code: GolayCode, mask: int) -> bool:
    if mask < 0 or mask > ALL_ONES:
        return False
    return syndrome(code, mask) == 0


def syndromes(code: GolayCode, masks) -> np.ndarray:
    """Vectorised ``syndrome`` over an integer array of masks."""
    m = np.asarray(masks, dtype=np.uint32)
    s = np.zeros(m.shape, dtype=np.uint32)
    for r, h in enumerate(code.parity_check):
        s |= (np.bitwise_count(m & np.uint32(h)) & np.uint32(1)).astype(np.uint32) << np.uint32(r)
    return s


def octads(code: GolayCode) -> tuple[int, ...]:
    """All 759 weight-8 codewords, ascending."""
    return code._octads


def steiner_coverage(code: GolayCode) -> dict[int, int]:
    """Histogram over all 5-subsets of the number of octads containing each.

    A Steiner system S(5,8,24) gives ``{1: 42504}``.
    """
    covered: dict[int, int] = {}
    for octad in octads(code):
        for five in combinations(support(octad), 5):
            m = mask_from_support(five)
            covered[m] = covered.get(m, 0) + 1
    hist: dict[int, int] = {}
    for five in combinations(range(N_COORDS), 5):
        c = covered.get(mask_from_support(five), 0)
        hist[c] = hist.get(c, 0) + 1
    return hist


def to_bitstring(mask: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(N_COORDS))


def export_codewords(code: GolayCode, path) -> None:
    """One 24-character 0/1 line per codeword, coordinate 0 leftmost."""
    with open(path, "w", encoding="utf-8") as fh:
        for c in code.codewords:
            fh.write(to_bitstring(c) + "\n")
