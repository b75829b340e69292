"""Integer form of the quadratic embedding R^24 -> R^324 and exact affine rank.

For a unit vector ``x`` the embedding is

    Phi(x) = 2/sqrt5 * sum x_i^2 e_i + 1/sqrt5 * sum x_i f_i
             + 2*sqrt2/sqrt5 * sum_{i<j} x_i x_j g_ij

With ``X = 4*sqrt2*x`` integral we keep the integer feature vector
``(X_i^2 | X_i | X_i X_j)``; Phi is recovered by scaling the three blocks by
``1/(16 sqrt5)``, ``1/(4 sqrt10)`` and ``1/(8 sqrt10)``. That scaling is an
invertible diagonal map, so affine ranks, equalities between coordinates and
the ordering of distances are the same for both.

For unit ``x, y`` with ``t = x.y``: ``Phi(x).Phi(y) = (4t^2 + t) / 5``. In
integer terms with ``d = dot(X, Y) = 32t`` this is ``(d^2 + 8d) / 1280``.

Note: the block sum ``sum_i e_i . Phi(x)`` equals ``2/sqrt5`` for unit ``x``,
not 1. Only its constancy matters for the affine dimension; here it is the
constraint ``sum(e_block) = 32``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .golay import N_COORDS
from .leech import ADMISSIBLE_DOTS

N_PAIRS = N_COORDS * (N_COORDS - 1) // 2
DIM = 2 * N_COORDS + N_PAIRS  # 324
PHI_DENOM = 1280
DEFAULT_PRIMES = (2147483647, 2147483629)

PAIRS = tuple(combinations(range(N_COORDS), 2))
_PAIR_INDEX = {pr: n for n, pr in enumerate(PAIRS)}
_PAIR_I = np.array([i for i, _ in PAIRS])
_PAIR_J = np.array([j for _, j in PAIRS])

E_BLOCK = slice(0, N_COORDS)
F_BLOCK = slice(N_COORDS, 2 * N_COORDS)
G_BLOCK = slice(2 * N_COORDS, DIM)


def e_col(i: int) -> int:
    return i


def f_col(i: int) -> int:
    return N_COORDS + i


def g_col(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return 2 * N_COORDS + _PAIR_INDEX[(i, j)]


class RankUndetermined(RuntimeError):
    """Modular lower bound and constraint upper bound disagree."""


class ConstraintViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class FeatureVector:
    e_block: tuple[int, ...]
    f_block: tuple[int, ...]
    g_block: tuple[int, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.e_block + self.f_block + self.g_block, dtype=np.int16)


def feature(p) -> FeatureVector:
    x = [int(v) for v in p]
    return FeatureVector(
        e_block=tuple(v * v for v in x),
        f_block=tuple(x),
        g_block=tuple(x[i] * x[j] for i, j in PAIRS),
    )


def features(points: np.ndarray) -> np.ndarray:
    """Feature vectors of an ``(n, 24)`` point array as an ``(n, 324)`` int16 array."""
    x = np.asarray(points, dtype=np.int16)
    out = np.empty((len(x), DIM), dtype=np.int16)
    out[:, E_BLOCK] = x * x
    out[:, F_BLOCK] = x
    out[:, G_BLOCK] = x[:, _PAIR_I] * x[:, _PAIR_J]
    return out


_E_COEF = 2 / math.sqrt(5)
_F_COEF = 1 / math.sqrt(5)
_G_COEF = 2 * math.sqrt(2) / math.sqrt(5)


def phi_real(p) -> np.ndarray:
    """The literal embedding of ``x = p / (4 sqrt2)`` in floating point."""
    x = np.asarray(p, dtype=np.float64) / (4 * math.sqrt(2))
    return np.concatenate([_E_COEF * x * x, _F_COEF * x, _G_COEF * x[_PAIR_I] * x[_PAIR_J]])


@dataclass(frozen=True)
class PhiInnerProduct:
    numerator: int
    denominator: int = PHI_DENOM

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator


def _check_dot(d: int) -> int:
    d = int(d)
    if d not in ADMISSIBLE_DOTS:
        raise ValueError(f"dot value {d} is not realised by two minimal vectors")
    return d


def phi_inner(d: int) -> PhiInnerProduct:
    d = _check_dot(d)
    return PhiInnerProduct(d * d + 8 * d)


def squared_distance_scaled(d: int) -> int:
    """``640 * |Phi(x) - Phi(y)|^2`` for points with integer dot ``d``."""
    d = _check_dot(d)
    return PHI_DENOM - d * d - 8 * d


# -- exact rank ---------------------------------------------------------------

def rank_mod_p(matrix, p: int) -> int:
    """Rank over GF(p) by row reduction; ``p`` must be below 2**31."""
    if p >= 1 << 31:
        raise ValueError("prime too large for int64 elimination")
    a = np.mod(np.asarray(matrix, dtype=np.int64), p)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        below = a[r + 1:, c].copy()
        hit = np.flatnonzero(below)
        if len(hit):
            a[r + 1 + hit] = (a[r + 1 + hit] - below[hit, None] * a[r]) % p
        r += 1
    return r


def bareiss_rank(matrix) -> int:
    """Exact rank over Q by fraction-free elimination on Python integers."""
    a = [[int(v) for v in row] for row in matrix]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            a[i] = [(pv * a[i][k] - f * a[r][k]) // prev for k in range(cols)]
        prev = pv
        r += 1
    return r


def augmented_gram(feats: np.ndarray, chunk: int = 16384) -> np.ndarray:
    """Exact ``A^T A`` for ``A = [feats | 1]`` as int64.

    Accumulated in float64 per chunk; every partial sum is an integer far
    below 2**53 for feature entries up to a few hundred, so it is exact.
    """
    n, dim = feats.shape
    if n * float(np.abs(feats).max(initial=1)) ** 2 >= 2.0 ** 52:
        raise ValueError("Gram entries would exceed exact float64 range")
    gram = np.zeros((dim + 1, dim + 1), dtype=np.int64)
    for s in range(0, n, chunk):
        blk = np.ones((min(chunk, n - s), dim + 1), dtype=np.float64)
        blk[:, :dim] = feats[s:s + chunk]
        gram += np.rint(blk.T @ blk).astype(np.int64)
    return gram


@dataclass(frozen=True)
class Constraint:
    """``coeffs . F == rhs`` for every feature vector ``F``."""

    coeffs: tuple[tuple[int, int], ...]  # sparse (column, coefficient)
    rhs: int
    label: str

    def dense(self, dim: int = DIM) -> np.ndarray:
        v = np.zeros(dim, dtype=np.int64)
        for col, c in self.coeffs:
            v[col] += c
        return v


def _eq(a: int, b: int, label: str) -> Constraint:
    return Constraint(((a, 1), (b, -1)), 0, label)


def _e_sum(total: int = 32) -> Constraint:
    return Constraint(tuple((e_col(i), 1) for i in range(N_COORDS)), total, "sum e = 32")


def constraints_for_M() -> list[Constraint]:
    return [_e_sum()]


def constraints_for_triple(t) -> list[Constraint]:
    k, l, m = t
    return [_eq(e_col(k), e_col(l), f"e{k} = e{l}"), _eq(e_col(l), e_col(m), f"e{l} = e{m}"), _e_sum()]


def constraints_for_pair(pr) -> list[Constraint]:
    k, l = pr
    return [_eq(e_col(k), e_col(l), f"e{k} = e{l}"), _e_sum()]


def constraints_for_L(a: int = 0, b: int = 1) -> list[Constraint]:
    """Relations satisfied by features of points with ``X_a == X_b``."""
    out = [_eq(e_col(a), e_col(b), f"e{a} = e{b}"), _eq(f_col(a), f_col(b), f"f{a} = f{b}")]
    for j in range(N_COORDS):
        if j not in (a, b):
            out.append(_eq(g_col(a, j), g_col(b, j), f"g{a},{j} = g{b},{j}"))
    out.append(_eq(g_col(a, b), e_col(a), f"g{a},{b} = e{a}"))
    out.append(_e_sum())
    return out


def discover_constraints(feats: np.ndarray) -> list[Constraint]:
    """Find simple exact affine relations holding on every row.

    Works on differences from the first row: zero difference columns give
    constant coordinates, proportional difference columns give two-term
    relations, and constant block sums are tried directly. General relations
    are not searched for; every returned constraint still has to pass
    ``check_constraints``.
    """
    n, dim = feats.shape
    f = feats.astype(np.int64)
    base = f[0]
    diff = f - base
    out: list[Constraint] = []
    const = ~diff.any(axis=0)
    for c in np.flatnonzero(const):
        out.append(Constraint(((int(c), 1),), int(base[c]), f"col{c} const"))
    # proportional difference columns: normalise by gcd and sign of first nonzero entry
    groups: dict[bytes, list[tuple[int, int]]] = {}
    for c in np.flatnonzero(~const):
        col = diff[:, c]
        g = int(np.gcd.reduce(np.abs(col)))
        lead = col[np.flatnonzero(col)[0]]
        scale = g if lead > 0 else -g
        groups.setdefault((col // scale).tobytes(), []).append((int(c), scale))
    for members in groups.values():
        c0, s0 = members[0]
        for c1, s1 in members[1:]:
            rhs = s1 * int(base[c0]) - s0 * int(base[c1])
            out.append(Constraint(((c0, s1), (c1, -s0)), rhs, f"col{c0}~col{c1}"))
    if dim == DIM:
        for name, blk in (("e", E_BLOCK), ("f", F_BLOCK), ("g", G_BLOCK)):
            s = diff[:, blk].sum(axis=1)
            if not const[blk].all() and not s.any():
                cols = range(blk.start, blk.stop)
                out.append(Constraint(tuple((c, 1) for c in cols), int(base[blk].sum()), f"sum {name} const"))
    return out


def check_constraints(feats: np.ndarray, constraints, chunk: int = 65536) -> list[Constraint]:
    """Return the constraints that fail on some row."""
    if not constraints:
        return []
    cmat = np.stack([c.dense(feats.shape[1]) for c in constraints])
    rhs = np.array([c.rhs for c in constraints], dtype=np.int64)
    bad = np.zeros(len(constraints), dtype=bool)
    for s in range(0, len(feats), chunk):
        vals = feats[s:s + chunk].astype(np.int64) @ cmat.T
        bad |= (vals != rhs).any(axis=0)
    return [c for c, b in zip(constraints, bad) if b]


def constraint_rank(constraints, dim: int = DIM) -> int:
    if not constraints:
        return 0
    cmat = np.stack([c.dense(dim) for c in constraints])
    if len(constraints) <= 64:
        return bareiss_rank(cmat.tolist())
    # rank over GF(p) never exceeds the rational rank, so the upper bound stays sound
    return rank_mod_p(cmat, DEFAULT_PRIMES[0])


@dataclass(frozen=True)
class RankSandwich:
    lower: int
    upper: int
    modular_ranks: tuple[tuple[int, int], ...]  # (prime, affine rank mod prime)
    n_constraints: int

    @property
    def determined(self) -> bool:
        return self.lower == self.upper


def rank_sandwich(feats: np.ndarray, constraints=None, primes=DEFAULT_PRIMES) -> RankSandwich:
    feats = np.asarray(feats)
    if feats.ndim != 2 or not len(feats):
        raise ValueError("need a non-empty (n, dim) feature array")
    dim = feats.shape[1]
    if constraints is None:
        constraints = discover_constraints(feats)
    failed = check_constraints(feats, constraints)
    if failed:
        raise ConstraintViolation(", ".join(c.label for c in failed))
    upper = dim - constraint_rank(constraints, dim)

    gram = augmented_gram(feats)
    mod = tuple((p, rank_mod_p(gram, p) - 1) for p in primes)
    lower = max(r for _, r in mod)
    return RankSandwich(lower, upper, mod, len(constraints))


def _fresh_primes(k: int = 2) -> tuple[int, ...]:
    from sympy import randprime

    out: set[int] = set()
    while len(out) < k:
        out.add(int(randprime(1 << 30, 1 << 31)))
    return tuple(sorted(out))


def affine_dimension(feats, constraints=None, primes=DEFAULT_PRIMES) -> int:
    """Dimension of the affine hull of the rows of ``feats``.

    Lower bound: rank over GF(p) of the Gram matrix of ``[F | 1]``, minus one.
    Upper bound: ``dim`` minus the rank of exact integer relations verified
    on every row. The value is returned only when the bounds meet; a miss is
    retried once with fresh random primes.
    """
    res = rank_sandwich(feats, constraints, primes)
    if not res.determined and res.lower < res.upper:
        res = rank_sandwich(feats, constraints, _fresh_primes())
    if not res.determined:
        raise RankUndetermined(f"rank undetermined: lower {res.lower}, upper {res.upper}")
    return res.lower


def check_subspace_membership(feats, triple) -> bool:
    """All rows have equal ``e`` entries on the triple and ``sum(e) == 32``."""
    feats = np.asarray(feats).reshape(-1, DIM)
    if not len(feats):
        return True
    k, l, m = triple
    e = feats[:, E_BLOCK].astype(np.int64)
    return bool(((e[:, k] == e[:, l]) & (e[:, l] == e[:, m]) & (e.sum(axis=1) == 32)).all())


def export_features_csv(feats: np.ndarray, path) -> None:
    np.savetxt(path, feats, fmt="%d", delimiter=",")
