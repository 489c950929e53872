"""Exact linear algebra over GF(2) with the symplectic form.

Vectors in F_2^{2n} are plain Python ints: bit k of the int is coordinate
k+1 of the vector.  Coordinates are interleaved per qubit, so bits
(2i, 2i+1) carry the (z, x) components of qubit i+1.  The symplectic form
is <a,b> = a^T J b with J block-diagonal, n blocks of [[0,1],[1,0]].

Matrices act on column vectors; an F2Matrix stores its 2n rows as ints,
so (M v) bit i = parity(rows[i] & v).

The module provides enumeration and exactly-uniform sampling of
Sp(2n, F_2), fixed-space dimensions, and maximal isotropic subspaces.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

__all__ = [
    "F2Matrix",
    "IsotropicSubspace",
    "symplectic_form",
    "is_symplectic",
    "fixed_space_dim",
    "sp_order",
    "enumerate_sp",
    "symplectic_from_index",
    "random_symplectic",
    "maximal_isotropic_subspaces",
    "matrix_to_hex",
    "matrix_from_hex",
]

SP_ENUM_MAX_N = 3
ISOTROPIC_MAX_N = 4


class DimensionError(ValueError):
    """Operands have mismatched or invalid GF(2) dimensions."""


class CapacityError(ValueError):
    """Requested exhaustive computation exceeds the supported size."""


@dataclass(frozen=True)
class F2Matrix:
    """2n x 2n matrix over GF(2), stored as row bitmasks."""

    rows: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.rows) != 2 * self.n:
            raise DimensionError(f"expected {2 * self.n} rows, got {len(self.rows)}")
        mask = (1 << (2 * self.n)) - 1
        if any(r < 0 or r > mask for r in self.rows):
            raise DimensionError("row bitmask out of range")

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.n != other.n:
            raise DimensionError("size mismatch")
        return F2Matrix(_mat_mul(self.rows, other.rows), self.n)

    def apply(self, v: int) -> int:
        """Matrix-vector product over GF(2)."""
        return _mat_vec(self.rows, v)

    def column(self, j: int) -> int:
        return _column(self.rows, j)

    def transpose(self) -> "F2Matrix":
        nn = 2 * self.n
        return F2Matrix(tuple(_column(self.rows, j) for j in range(nn)), self.n)

    @staticmethod
    def identity(n: int) -> "F2Matrix":
        return F2Matrix(tuple(1 << i for i in range(2 * n)), n)


@dataclass(frozen=True)
class IsotropicSubspace:
    """Subspace of F_2^{2n} on which the symplectic form vanishes.

    The basis is kept in reduced row echelon form (sorted by leading bit,
    descending) so equal subspaces compare equal.
    """

    basis: tuple[int, ...]
    n: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[int]:
        """All 2^dim elements of the subspace."""
        out = [0]
        for b in self.basis:
            out += [v ^ b for v in out]
        return out

    def contains(self, v: int) -> bool:
        return _reduce(v, self.basis) == 0


# ---------------------------------------------------------------------------
# elementary bit operations


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _swap_pairs(v: int) -> int:
    """J v: swap the (z, x) bits within every qubit pair."""
    even = v & 0x5555555555555555
    odd = v & 0xAAAAAAAAAAAAAAAA
    return (even << 1) | (odd >> 1)


def symplectic_form(a: int, b: int, n: int) -> int:
    """<a,b> = a^T J b over GF(2)."""
    mask = (1 << (2 * n)) - 1
    if a < 0 or b < 0 or a > mask or b > mask:
        raise DimensionError("vector does not fit in 2n bits")
    return _parity(a & _swap_pairs(b))


def _mat_vec(rows, v: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        out |= _parity(r & v) << i
    return out


def _mat_mul(a_rows, b_rows):
    out = []
    for ra in a_rows:
        acc = 0
        j = 0
        while ra:
            if ra & 1:
                acc ^= b_rows[j]
            ra >>= 1
            j += 1
        out.append(acc)
    return tuple(out)


def _column(rows, j: int) -> int:
    c = 0
    for i, r in enumerate(rows):
        c |= ((r >> j) & 1) << i
    return c


def _rank(rows) -> int:
    pivots = {}
    rank = 0
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                rank += 1
                break
    return rank


def _reduce(v: int, basis) -> int:
    """Reduce v modulo the span of basis rows (any echelon order)."""
    for b in basis:
        h = b.bit_length() - 1
        if (v >> h) & 1:
            v ^= b
    return v


def _rref(rows) -> tuple[int, ...]:
    """Reduced row echelon basis, sorted by leading bit descending."""
    basis = []
    for v in rows:
        for b in basis:
            h = b.bit_length() - 1
            if (v >> h) & 1:
                v ^= b
        if v:
            # clear this pivot from existing rows
            h = v.bit_length() - 1
            basis = [b ^ v if (b >> h) & 1 else b for b in basis]
            basis.append(v)
    return tuple(sorted(basis, reverse=True))


# ---------------------------------------------------------------------------
# symplectic predicates


def is_symplectic(F: F2Matrix) -> bool:
    """True iff F J F^T = J, i.e. F preserves the form on all basis pairs."""
    nn = 2 * F.n
    cols = [F.column(j) for j in range(nn)]
    for i in range(nn):
        for j in range(i + 1, nn):
            want = 1 if j == i ^ 1 else 0
            if symplectic_form(cols[i], cols[j], F.n) != want:
                return False
    return True


def fixed_space_dim(F: F2Matrix) -> int:
    """dim ker(F - 1) over GF(2); the number of fixed vectors is 2^result."""
    nn = 2 * F.n
    rows = tuple(r ^ (1 << i) for i, r in enumerate(F.rows))
    return nn - _rank(rows)


def transvection(a: int, v: int, n: int) -> int:
    """Symplectic transvection Z_a: v -> v + <v,a> a."""
    return v ^ a if symplectic_form(v, a, n) else v


def transvection_matrix(a: int, n: int) -> F2Matrix:
    nn = 2 * n
    cols = [transvection(a, 1 << j, n) for j in range(nn)]
    return F2Matrix(tuple(_cols_to_rows(cols, nn)), n)


# ---------------------------------------------------------------------------
# enumeration of Sp(2n, F_2)
#
# Every F in Sp(2n) factors uniquely as F = L(f1, g) (I_2 + G') where
# (f1, g) is the image of the first hyperbolic pair (any of the
# (2^{2n}-1) 2^{2n-1} valid pairs), L is a fixed representative mapping
# (e0, e1) -> (f1, g), and G' ranges over Sp(2n-2) acting on the trailing
# coordinates.  Iterating this gives both a deterministic enumeration and
# an index <-> element bijection used for exactly-uniform sampling.


def sp_order(n: int) -> int:
    """|Sp(2n, F_2)| = 2^{n^2} prod_{i=1..n} (4^i - 1)."""
    total = 1 << (n * n)
    for i in range(1, n + 1):
        total *= (1 << (2 * i)) - 1
    return total


def _pair_count(n: int) -> int:
    return ((1 << (2 * n)) - 1) << (2 * n - 1)


def _second_image(f1: int, b: int, n: int) -> int:
    """The b-th vector g with <f1, g> = 1, enumerated via an affine basis."""
    nn = 2 * n
    jstar = next(j for j in range(nn) if (f1 >> (j ^ 1)) & 1)
    g = 1 << jstar
    k = 0
    for i in range(nn):
        if i == jstar:
            continue
        if (b >> k) & 1:
            h = 1 << i
            if (f1 >> (i ^ 1)) & 1:
                h ^= 1 << jstar
            g ^= h
        k += 1
    return g


def _complete_symplectic_basis(u: int, v: int, n: int) -> list[int]:
    """Deterministic symplectic basis (u, v, u2, v2, ...) of F_2^{2n}."""
    nn = 2 * n
    pairs = [(u, v)]
    candidates = [1 << j for j in range(nn)]
    while 2 * len(pairs) < nn:
        reduced = []
        pivots = []
        for c in candidates:
            for (a, b) in pairs:
                if symplectic_form(a, c, n):
                    c ^= b
                if symplectic_form(b, c, n):
                    c ^= a
            r = _reduce(c, pivots)
            if r:
                pivots = list(_rref(pivots + [c]))
                reduced.append(c)
        u2 = reduced[0]
        v2 = next(c for c in reduced[1:] if symplectic_form(u2, c, n))
        pairs.append((u2, v2))
        candidates = reduced
    cols = []
    for (a, b) in pairs:
        cols += [a, b]
    return cols


def _pair_representative(q: int, n: int) -> tuple[int, ...]:
    """Rows of the coset representative for pair index q in [0, _pair_count)."""
    nn = 2 * n
    f1_idx, b = divmod(q, 1 << (nn - 1))
    f1 = f1_idx + 1
    g = _second_image(f1, b, n)
    cols = _complete_symplectic_basis(f1, g, n)
    return tuple(_cols_to_rows(cols, nn))


def _cols_to_rows(cols, nn):
    rows = [0] * nn
    for j, c in enumerate(cols):
        for i in range(nn):
            if (c >> i) & 1:
                rows[i] |= 1 << j
    return rows


def _embed_sub(rows_sub) -> tuple[int, ...]:
    return (1, 2) + tuple(r << 2 for r in rows_sub)


def _iter_sp_rows(n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        for q in range(_pair_count(1)):
            yield _pair_representative(q, 1)
        return
    subs = [_embed_sub(s) for s in _iter_sp_rows(n - 1)]
    for q in range(_pair_count(n)):
        left = _pair_representative(q, n)
        for m in subs:
            yield _mat_mul(left, m)


def enumerate_sp(n: int) -> Iterator[F2Matrix]:
    """Yield every element of Sp(2n, F_2) exactly once (n <= 3)."""
    if n > SP_ENUM_MAX_N:
        raise CapacityError(
            f"|Sp({2 * n},F2)| = {sp_order(n)} is beyond exhaustive enumeration; "
            "use random_symplectic for sampling"
        )
    for rows in _iter_sp_rows(n):
        yield F2Matrix(rows, n)


def symplectic_from_index(index: int, n: int) -> F2Matrix:
    """The index-th element of the enumeration order, 0 <= index < sp_order(n)."""
    if not 0 <= index < sp_order(n):
        raise ValueError("index out of range")
    rows = _rows_from_index(index, n)
    return F2Matrix(rows, n)


def _rows_from_index(index: int, n: int) -> tuple[int, ...]:
    if n == 1:
        return _pair_representative(index, 1)
    q, r = divmod(index, sp_order(n - 1))
    left = _pair_representative(q, n)
    return _mat_mul(left, _embed_sub(_rows_from_index(r, n - 1)))


def _rand_below(rng, bound: int) -> int:
    """Uniform integer in [0, bound) from a numpy Generator, any bound size."""
    nbits = bound.bit_length()
    nwords = (nbits + 31) // 32
    while True:
        x = 0
        for w in rng.integers(0, 1 << 32, size=nwords, dtype=np.uint64):
            x = (x << 32) | int(w)
        x >>= nwords * 32 - nbits
        if x < bound:
            return x


def random_symplectic(n: int, rng: np.random.Generator) -> F2Matrix:
    """Exactly uniform element of Sp(2n, F_2).

    Draws a uniform index into the constructive enumeration, so every
    group element has probability exactly 1/|Sp(2n, F_2)|.
    """
    return symplectic_from_index(_rand_below(rng, sp_order(n)), n)


# ---------------------------------------------------------------------------
# fixed-space statistics over the whole group (vectorized sweep)


@functools.lru_cache(maxsize=None)
def fixed_dim_histogram(n: int) -> tuple[int, ...]:
    """Histogram over Sp(2n, F_2) of dim ker(F - 1); entry k counts dims == k.

    Exact integer counts; the sweep is vectorized over the trailing
    Sp(2n-2) factor so n = 3 (1 451 520 elements) stays fast.
    """
    if n > SP_ENUM_MAX_N:
        raise CapacityError("histogram requires exhaustive enumeration (n <= 3)")
    nn = 2 * n
    if n == 1:
        counts = [0] * (nn + 1)
        for rows in _iter_sp_rows(1):
            counts[nn - _rank(tuple(r ^ (1 << i) for i, r in enumerate(rows)))] += 1
        return tuple(counts)
    subs = np.array(
        [_embed_sub(s) for s in _iter_sp_rows(n - 1)], dtype=np.uint64
    )
    m = subs.shape[0]
    counts = np.zeros(nn + 1, dtype=np.int64)
    eye_bits = np.array([1 << i for i in range(nn)], dtype=np.uint64)
    rowsel = np.arange(m)
    for q in range(_pair_count(n)):
        left = _pair_representative(q, n)
        f = np.zeros((m, nn), dtype=np.uint64)
        for i, ra in enumerate(left):
            acc = np.zeros(m, dtype=np.uint64)
            j = 0
            while ra:
                if ra & 1:
                    acc ^= subs[:, j]
                ra >>= 1
                j += 1
            f[:, i] = acc
        work = f ^ eye_bits[None, :]
        rank = np.zeros(m, dtype=np.int64)
        one = np.uint64(1)
        for bit in range(nn):
            hasbit = (work >> np.uint64(bit)) & one
            any_ = hasbit.any(axis=1)
            piv = work[rowsel, np.argmax(hasbit, axis=1)]
            piv[~any_] = 0
            work ^= hasbit * piv[:, None]
            rank += any_
        counts += np.bincount(nn - rank, minlength=nn + 1)
    return tuple(int(c) for c in counts)


# ---------------------------------------------------------------------------
# isotropic subspaces


@functools.lru_cache(maxsize=None)
def maximal_isotropic_subspaces(n: int) -> tuple[IsotropicSubspace, ...]:
    """All dimension-n isotropic subspaces of F_2^{2n}, in canonical form.

    Their number is prod_{i=1..n} (2^i + 1).
    """
    if n > ISOTROPIC_MAX_N:
        raise CapacityError(f"isotropic enumeration supported for n <= {ISOTROPIC_MAX_N}")
    nn = 2 * n
    all_vecs = range(1, 1 << nn)
    level = {(): None}
    for _ in range(n):
        nxt = {}
        for basis in level:
            span = set(IsotropicSubspace(basis, n).vectors()) if basis else {0}
            for v in all_vecs:
                if v in span:
                    continue
                if all(symplectic_form(v, b, n) == 0 for b in basis):
                    nxt[_rref(basis + (v,))] = None
        level = nxt
    return tuple(IsotropicSubspace(b, n) for b in sorted(level))


# ---------------------------------------------------------------------------
# serialization


def matrix_to_hex(F: F2Matrix) -> str:
    """One lowercase hex row per line; bit k of the row int is coordinate k+1."""
    return "\n".join(format(r, "x") for r in F.rows)


def matrix_from_hex(text: str, n: int) -> F2Matrix:
    rows = tuple(int(line.strip(), 16) for line in text.strip().splitlines())
    return F2Matrix(rows, n)
