"""The diagonal-Pauli stabilizer code on k copies and its decomposition.

For k a multiple of 4 the operators W_a x ... x W_a (k factors) form a
stabilizer group; the joint +1 eigenspace V_{n,k} has dimension d^{k-2}
and projector P_{n,k} = (1/d^2) sum_a W_a^{(x k)}.  For k = 4 this code is
the one extra invariant subspace the Clifford group has beyond the
symmetric-group commutant, and everything about the decomposition of
(C^d)^{x4} under Clifford x S_4 reduces to exact integer data:

* dimension_table   -- Specht/Weyl dimensions split by the code and its
                       complement, as exact integers,
* orbit_counting_dims -- an independent combinatorial oracle for the two
                       multiplicity-free rows, obtained by counting
                       letter-string orbits,
* symplectic_character / multiplicity_sum / clifford_frame_potential --
                       exact character sums over Sp(2n, F_2) driven by
                       fixed-space dimensions.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import f2lin
from .f2lin import CapacityError, F2Matrix, IsotropicSubspace, fixed_space_dim
from .pauli import PauliLabel, pauli_matrix

__all__ = [
    "PARTITIONS",
    "DimensionRow",
    "stab_projector",
    "stab_code_basis",
    "vec_pauli_basis",
    "young_projector",
    "dimension_table",
    "orbit_counting_dims",
    "symplectic_character",
    "numeric_symplectic_character",
    "multiplicity_sum",
    "sp_multiplicity_sum",
    "clifford_frame_potential",
    "isotropic_orbit_states",
]

PARTITIONS = ((4,), (1, 1, 1, 1), (2, 2), (2, 1, 1), (3, 1))

SPECHT_DIM = {(4,): 1, (1, 1, 1, 1): 1, (2, 2): 2, (2, 1, 1): 3, (3, 1): 3}

# characters of S_4 by cycle type
S4_CHARACTER = {
    (4,): {(1, 1, 1, 1): 1, (2, 2): 1, (2, 1, 1): 1, (3, 1): 1, (4,): 1},
    (1, 1, 1, 1): {(1, 1, 1, 1): 1, (2, 2): 1, (2, 1, 1): -1, (3, 1): 1, (4,): -1},
    (2, 2): {(1, 1, 1, 1): 2, (2, 2): 2, (2, 1, 1): 0, (3, 1): -1, (4,): 0},
    (2, 1, 1): {(1, 1, 1, 1): 3, (2, 2): -1, (2, 1, 1): -1, (3, 1): 0, (4,): 1},
    (3, 1): {(1, 1, 1, 1): 3, (2, 2): -1, (2, 1, 1): 1, (3, 1): 0, (4,): -1},
}

DENSE_DIM_MAX = 4096
YOUNG_DENSE_MAX_N = 2


def weyl_dim(lam: tuple, d: int) -> Fraction:
    """Dimension of the degree-4 unitary-group irrep for partition lam."""
    if lam == (4,):
        return Fraction(d * (d + 1) * (d + 2) * (d + 3), 24)
    if lam == (1, 1, 1, 1):
        return Fraction(d * (d - 1) * (d - 2) * (d - 3), 24)
    if lam == (2, 2):
        return Fraction(d * d * (d * d - 1), 12)
    if lam == (2, 1, 1):
        return Fraction(d * (d - 2) * (d * d - 1), 8)
    if lam == (3, 1):
        return Fraction(d * (d + 2) * (d * d - 1), 8)
    raise ValueError(f"not a partition of 4: {lam!r}")


def cycle_type(perm: tuple) -> tuple:
    seen = [False] * len(perm)
    lens = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        lens.append(ln)
    return tuple(sorted(lens, reverse=True))


# ---------------------------------------------------------------------------
# dense projectors


def _reorder_qubit_major_to_copy_major(arr: np.ndarray, n: int, k: int) -> np.ndarray:
    """Permute tensor legs of a (2^{nk})-dim vector or square matrix from
    per-qubit copy blocks to per-copy qubit blocks."""
    bits = n * k
    perm = [0] * bits
    for c in range(k):
        for q in range(n):
            perm[c * n + q] = q * k + c
    if arr.ndim == 1:
        return arr.reshape((2,) * bits).transpose(perm).reshape(-1)
    full = perm + [bits + p for p in perm]
    dim = 1 << bits
    return arr.reshape((2,) * (2 * bits)).transpose(full).reshape(dim, dim)


def _check_stab_args(n: int, k: int) -> None:
    if k % 4 != 0 or k <= 0:
        raise ValueError("k must be a positive multiple of 4")
    if (1 << n) ** k > DENSE_DIM_MAX:
        raise CapacityError(
            f"dense stabilizer projector limited to dimension {DENSE_DIM_MAX}; "
            f"requested d^k = {(1 << n) ** k}"
        )


@functools.lru_cache(maxsize=None)
def stab_projector(n: int, k: int = 4) -> np.ndarray:
    """Projector (1/d^2) sum_a W_a^{(x k)} onto the k-copy stabilizer code."""
    _check_stab_args(n, k)
    p1 = np.zeros((1 << k, 1 << k), dtype=complex)
    for a in range(4):
        w = pauli_matrix(PauliLabel(1, a))
        term = np.array([[1.0 + 0j]])
        for _ in range(k):
            term = np.kron(term, w)
        p1 += term
    p1 /= 4.0
    out = p1
    for _ in range(n - 1):
        out = np.kron(out, p1)
    if n > 1:
        out = _reorder_qubit_major_to_copy_major(out, n, k)
    return out


def stab_code_basis(n: int, k: int = 4) -> np.ndarray:
    """Orthonormal basis of the code, shape (d^{k-2}, d^k).

    Single-qubit basis vectors are (|u> + |~u>)/sqrt(2) over even-weight
    bitstrings u with leading bit 0; the n-qubit basis takes all tensor
    combinations.
    """
    _check_stab_args(n, k)
    dim = 1 << k
    singles = []
    for u in range(dim // 2):  # leading bit of u is 0
        if bin(u).count("1") % 2:
            continue
        v = np.zeros(dim, dtype=complex)
        v[u] = 1 / np.sqrt(2.0)
        v[u ^ (dim - 1)] += 1 / np.sqrt(2.0)
        singles.append(v)
    out = []
    for combo in itertools.product(singles, repeat=n):
        v = np.array([1.0 + 0j])
        for w in combo:
            v = np.kron(v, w)
        if n > 1:
            v = _reorder_qubit_major_to_copy_major(v, n, k)
        out.append(v)
    return np.array(out)


def vec_pauli_basis(n: int) -> np.ndarray:
    """The d^2 orthogonal code vectors vec(W_a) x vec(W_a), shape (d^2, d^4)."""
    if n > 3:
        raise CapacityError("vectorized Pauli basis supported for n <= 3")
    d = 1 << n
    out = np.empty((d * d, d**4), dtype=complex)
    for a in range(d * d):
        v = pauli_matrix(PauliLabel(n, a)).reshape(-1)
        out[a] = np.kron(v, v)
    return out


@functools.lru_cache(maxsize=None)
def _perm_operators(d: int) -> dict:
    idx = np.arange(d**4)
    digits = [(idx // d ** (3 - c)) % d for c in range(4)]
    ops = {}
    for perm in itertools.permutations(range(4)):
        y = sum(digits[perm[c]] * d ** (3 - c) for c in range(4))
        m = np.zeros((d**4, d**4), dtype=complex)
        m[y, idx] = 1.0
        ops[perm] = m
    return ops


def young_projector(lam: tuple, n: int) -> np.ndarray:
    """Isotypic projector (d_lam/24) sum_sigma chi_lam(sigma) U_sigma."""
    if lam not in SPECHT_DIM:
        raise ValueError(f"not a partition of 4: {lam!r}")
    if n > YOUNG_DENSE_MAX_N:
        raise CapacityError("dense isotypic projectors supported for n <= 2")
    d = 1 << n
    chi = S4_CHARACTER[lam]
    out = np.zeros((d**4, d**4), dtype=complex)
    for perm, op in _perm_operators(d).items():
        out += chi[cycle_type(perm)] * op
    return (SPECHT_DIM[lam] / 24.0) * out


# ---------------------------------------------------------------------------
# exact dimension ledger


@dataclass(frozen=True)
class DimensionRow:
    lam: tuple
    d_lam: int
    D_lam: int
    D_plus: int
    D_minus: int

    def to_dict(self) -> dict:
        return {
            "partition": list(self.lam),
            "specht_dim": self.d_lam,
            "weyl_dim": self.D_lam,
            "code_part": self.D_plus,
            "complement_part": self.D_minus,
        }


def dimension_table(n: int) -> list[DimensionRow]:
    """Exact splitting of each Weyl module by the 4-copy stabilizer code.

    Traces against the code projector reduce to the cycle-type rule
    tr(U_sigma W_a^{x4}) = d^{#even cycles} for a != 0 (zero if sigma has an
    odd cycle), so each entry is integer arithmetic.
    """
    d = 1 << n
    rows = []
    for lam in PARTITIONS:
        D = weyl_dim(lam, d)
        chi22 = S4_CHARACTER[lam][(2, 2)]
        chi4 = S4_CHARACTER[lam][(4,)]
        plus = (D + Fraction((d * d - 1) * (3 * chi22 * d * d + 6 * chi4 * d), 24)) / (d * d)
        minus = D - plus
        if plus.denominator != 1 or minus.denominator != 1 or D.denominator != 1:
            raise AssertionError(f"non-integer dimension for {lam}")
        rows.append(DimensionRow(lam, SPECHT_DIM[lam], int(D), int(plus), int(minus)))
    return rows


@functools.lru_cache(maxsize=None)
def orbit_counting_dims(n: int) -> tuple[int, int]:
    """Independent oracle for the two multiplicity-free code dimensions.

    The code has a basis labeled by strings over {0,1,2,3} of length n on
    which copy permutations act by relabeling letters 1,2,3.  The number of
    string orbits gives the symmetric part; orbits of strings with at least
    two distinct nonzero letters give the antisymmetric part.
    """
    if n > 6:
        raise CapacityError("string-orbit counting supported for n <= 6")
    perms3 = list(itertools.permutations((1, 2, 3)))
    total = set()
    type3 = set()
    for s in itertools.product((0, 1, 2, 3), repeat=n):
        canon = min(tuple(0 if c == 0 else p[c - 1] for c in s) for p in perms3)
        total.add(canon)
        if len({c for c in s if c != 0}) >= 2:
            type3.add(canon)
    return len(total), len(type3)


# ---------------------------------------------------------------------------
# symplectic character sums


def symplectic_character(F: F2Matrix, k: int = 4) -> int:
    """Exact character of the code representation: [(-4)^{k/4}/2]^{dim ker(F-1)}."""
    if k % 4 != 0 or k <= 0:
        raise ValueError("k must be a positive multiple of 4")
    base = (-4) ** (k // 4) // 2
    return base ** fixed_space_dim(F)


def numeric_symplectic_character(U, k: int = 4) -> float:
    """tr(U^{x k} P_{n,k}) evaluated from the dense unitary.

    Uses tr(U^{x k} W_a^{x k}) = [tr(U W_a)]^k so no d^k-dimensional matrix
    is formed; cross-validates the exact character.
    """
    from .pauli import label_split

    n = U.n
    d = 1 << n
    m = U.matrix
    idx = np.arange(d)
    total = 0.0 + 0.0j
    for a in range(d * d):
        z, x = label_split(a, n)
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & z) & 1)
        phase = 1j ** ((a & (a >> 1) & 0x5555555555555555).bit_count())
        tr = phase * np.sum(m[idx, idx ^ x] * signs)
        total += tr**k
    return float((total / d**2).real)


def multiplicity_sum(R, k: int = 4, verify_group: bool = True) -> Fraction:
    """(1/|R|) sum_{F in R} f(F)^{k-2} with f(F) = 2^{dim ker(F-1)}.

    For a subgroup R this equals the squared-multiplicity sum of the code
    representation restricted to R, and also the number of R-orbits on
    (k-2)-tuples of vectors.  Closure is checked pairwise for small R and
    on random pairs for large R.
    """
    if k % 4 != 0 or k <= 0:
        raise ValueError("k must be a positive multiple of 4")
    mats = list(R)
    if not mats:
        raise ValueError("empty set")
    if verify_group:
        _check_closure(mats)
    total = sum(2 ** ((k - 2) * fixed_space_dim(F)) for F in mats)
    return Fraction(total, len(mats))


def _check_closure(mats, sample_pairs: int = 512) -> None:
    keys = {m.rows for m in mats}
    if len(keys) != len(mats):
        raise ValueError("input contains duplicate elements")
    m = len(mats)
    if m * m <= 4096:
        pairs = itertools.product(mats, mats)
    else:
        rng = np.random.default_rng(0)
        pairs = (
            (mats[int(i)], mats[int(j)])
            for i, j in zip(rng.integers(m, size=sample_pairs), rng.integers(m, size=sample_pairs))
        )
    for a, b in pairs:
        if (a @ b).rows not in keys:
            raise ValueError("input set is not closed under multiplication")


def sp_multiplicity_sum(n: int, k: int = 4) -> Fraction:
    """multiplicity_sum over the full Sp(2n, F_2), via the cached histogram."""
    if k % 4 != 0 or k <= 0:
        raise ValueError("k must be a positive multiple of 4")
    hist = f2lin.fixed_dim_histogram(n)
    total = sum(c * 2 ** ((k - 2) * dim) for dim, c in enumerate(hist))
    return Fraction(total, f2lin.sp_order(n))


def clifford_frame_potential(n: int, t: int = 4) -> Fraction:
    """Frame potential of the n-qubit Clifford group, exact.

    Equals the average of f(F)^{t-1} over Sp(2n, F_2), f(F) being the
    number of fixed vectors of F; requires the exhaustive sweep (n <= 3).
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    hist = f2lin.fixed_dim_histogram(n)
    total = sum(c * 2 ** ((t - 1) * dim) for dim, c in enumerate(hist))
    return Fraction(total, f2lin.sp_order(n))


# ---------------------------------------------------------------------------
# code states labeled by maximal isotropic subspaces


def isotropic_orbit_states(n: int) -> list[tuple[IsotropicSubspace, np.ndarray]]:
    """One code state per maximal isotropic subspace M of F_2^{2n}.

    The state is the unique joint +1 eigenvector of the diagonal Paulis
    together with W_a x W_a x 1 x 1 and W_a x 1 x W_a x 1 for a in M; it is
    produced by projecting the first computational basis vector with a
    nonzero image and lives in the symmetric part of the code.
    """
    if n > 2:
        raise CapacityError("isotropic-orbit states supported for n <= 2")
    d = 1 << n
    eye = np.eye(d)
    proj_code = stab_projector(n, 4)
    out = []
    for M in f2lin.maximal_isotropic_subspaces(n):
        q1 = np.zeros((d**4, d**4), dtype=complex)
        q2 = np.zeros((d**4, d**4), dtype=complex)
        for a in M.vectors():
            w = pauli_matrix(PauliLabel(n, a))
            q1 += np.kron(np.kron(w, w), np.kron(eye, eye))
            q2 += np.kron(np.kron(w, eye), np.kron(w, eye))
        q1 /= d
        q2 /= d
        proj = proj_code @ q1 @ q2
        state = None
        for j in range(d**4):
            v = proj[:, j]
            nrm = np.linalg.norm(v)
            if nrm > 1e-8:
                state = v / nrm
                break
        assert state is not None
        out.append((M, state))
    return out
