"""Phase-exact Pauli operators indexed by F_2^{2n}.

A label (a, j) stands for the operator i^j W_a, where W_a is the tensor
product of single-qubit matrices sigma_{(z,x)} selected by the interleaved
bit pairs of a (see f2lin for the bit convention), and j is a power of i
kept modulo 4.  With sigma_{(z,x)} = i^{zx} X^x Z^z the bare W_a (j = 0)
is always Hermitian and squares to the identity.

The characteristic function of a state collects all d^2 real expectation
values <psi|W_a|psi>; it is computed with one Hadamard-transform matrix
product per X-mask rather than per-label dense operators, which keeps the
innermost loop of the l4-norm cheap up to n = 5 and beyond.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .f2lin import DimensionError, symplectic_form

__all__ = [
    "PauliLabel",
    "CharacteristicFunction",
    "pauli_matrix",
    "pauli_product",
    "apply_pauli",
    "characteristic_function",
    "ell4_norm4",
    "alpha_plus",
    "label_split",
    "label_join",
]

_SIGMA = {
    (0, 0): np.array([[1, 0], [0, 1]], dtype=complex),
    (0, 1): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 0): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}

NORM_ATOL = 1e-10


class NormalizationError(ValueError):
    """State vector is not normalized to within tolerance."""


@dataclass(frozen=True)
class PauliLabel:
    """The operator i^phase_exp * W_a on n qubits."""

    n: int
    a: int
    phase_exp: int = 0

    def __post_init__(self):
        if not 0 <= self.a < (1 << (2 * self.n)):
            raise DimensionError("label out of range for n qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @staticmethod
    def identity(n: int) -> "PauliLabel":
        return PauliLabel(n, 0, 0)

    def inverse(self) -> "PauliLabel":
        # W_a^2 = 1, so the inverse only flips the i-power
        return PauliLabel(self.n, self.a, -self.phase_exp)

    def hermitian_part(self) -> "PauliLabel":
        return PauliLabel(self.n, self.a, 0)


def _qubit_bits(a: int, n: int, i: int) -> tuple[int, int]:
    # (z, x) of qubit i, 1-based, qubit 1 = leftmost tensor factor
    return (a >> (2 * (i - 1))) & 1, (a >> (2 * (i - 1) + 1)) & 1


def label_split(a: int, n: int) -> tuple[int, int]:
    """Compressed (z_mask, x_mask) in state-bit order (qubit 1 = MSB)."""
    z = x = 0
    for i in range(1, n + 1):
        zi, xi = _qubit_bits(a, n, i)
        z |= zi << (n - i)
        x |= xi << (n - i)
    return z, x


def label_join(z: int, x: int, n: int) -> int:
    """Inverse of label_split."""
    a = 0
    for i in range(1, n + 1):
        a |= ((z >> (n - i)) & 1) << (2 * (i - 1))
        a |= ((x >> (n - i)) & 1) << (2 * (i - 1) + 1)
    return a


def pauli_matrix(p: PauliLabel) -> np.ndarray:
    """Dense d x d realization of i^j W_a."""
    out = np.array([[1.0 + 0j]])
    for i in range(1, p.n + 1):
        out = np.kron(out, _SIGMA[_qubit_bits(p.a, p.n, i)])
    return (1j ** p.phase_exp) * out


def _product_phase(a: int, b: int, n: int) -> int:
    """i-power phi with W_a W_b = i^phi W_{a^b}, tracked exactly mod 4."""
    phi = 0
    for i in range(1, n + 1):
        z, x = _qubit_bits(a, n, i)
        zp, xp = _qubit_bits(b, n, i)
        phi += z * x + zp * xp + 2 * z * xp - (z ^ zp) * (x ^ xp)
    return phi % 4


def pauli_product(p: PauliLabel, q: PauliLabel) -> PauliLabel:
    """Label of the matrix product, with the i-power tracked exactly."""
    if p.n != q.n:
        raise DimensionError("qubit count mismatch")
    phase = (p.phase_exp + q.phase_exp + _product_phase(p.a, q.a, p.n)) % 4
    return PauliLabel(p.n, p.a ^ q.a, phase)


def commutes(p: PauliLabel, q: PauliLabel) -> bool:
    return symplectic_form(p.a, q.a, p.n) == 0


# ---------------------------------------------------------------------------
# matrix-free action on state vectors


@functools.lru_cache(maxsize=None)
def _xor_index(n: int) -> np.ndarray:
    d = 1 << n
    idx = np.arange(d)
    return idx[:, None] ^ idx[None, :]


@functools.lru_cache(maxsize=None)
def _hadamard(n: int) -> np.ndarray:
    d = 1 << n
    idx = np.arange(d)
    pc = np.bitwise_count(idx[:, None] & idx[None, :])
    return 1.0 - 2.0 * (pc & 1)


@functools.lru_cache(maxsize=None)
def _xi_prefactor(n: int) -> np.ndarray:
    # (-i)^{popcount(z & m)} for compressed masks z (rows) and m (cols)
    d = 1 << n
    idx = np.arange(d)
    pc = np.bitwise_count(idx[:, None] & idx[None, :])
    return (-1j) ** pc


@functools.lru_cache(maxsize=None)
def _label_table(n: int) -> np.ndarray:
    d = 1 << n
    tab = np.empty((d, d), dtype=np.int64)
    for z in range(d):
        for m in range(d):
            tab[z, m] = label_join(z, m, n)
    return tab


def apply_pauli(p: PauliLabel, psi: np.ndarray) -> np.ndarray:
    """i^j W_a |psi> by index permutation and phase flips; no dense matrix."""
    d = 1 << p.n
    if psi.shape != (d,):
        raise DimensionError(f"state must have length {d}")
    z, x = label_split(p.a, p.n)
    idx = np.arange(d)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & z) & 1)
    phase = (1j ** p.phase_exp) * (1j ** ((p.a & (p.a >> 1) & 0x5555555555555555).bit_count()))
    out = np.empty(d, dtype=complex)
    out[idx ^ x] = phase * signs * psi
    return out


@dataclass(frozen=True)
class CharacteristicFunction:
    """All d^2 expectation values <psi|W_a|psi>, indexed by the label int a."""

    values: np.ndarray
    n: int

    def value(self, a: int) -> float:
        return float(self.values[a])

    def to_csv(self, path) -> None:
        nn = 2 * self.n
        with open(path, "w") as fh:
            fh.write("label_bits,value\n")
            for a, v in enumerate(self.values):
                bits = format(a, f"0{nn}b")[::-1]  # coordinate 1 first
                fh.write(f"{bits},{v!r}\n")


def _check_normalized(psi: np.ndarray) -> None:
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > NORM_ATOL:
        raise NormalizationError(f"state norm {nrm} differs from 1 beyond {NORM_ATOL}")


def characteristic_function(psi: np.ndarray, imag_atol: float = 1e-12) -> CharacteristicFunction:
    """Expectation values of all d^2 Pauli operators on a normalized state."""
    n = _infer_n(psi)
    _check_normalized(psi)
    d = 1 << n
    w = psi.conj()[:, None] * psi[_xor_index(n)]
    t = _hadamard(n) @ w
    xi = _xi_prefactor(n) * t
    worst = np.max(np.abs(xi.imag))
    if worst > imag_atol:
        raise AssertionError(f"imaginary residue {worst} in Pauli expectations")
    out = np.empty(d * d)
    out[_label_table(n).ravel()] = xi.real.ravel()
    return CharacteristicFunction(out, n)


def ell4_norm4(xi: CharacteristicFunction) -> float:
    """Fourth power of the l4-norm: sum of the fourth powers of all entries."""
    return float(np.sum(xi.values ** 4))


def alpha_plus(psi: np.ndarray) -> float:
    """Stabilizer-code overlap tr[P_{n,4} (|psi><psi|)^{x4}] = ||Xi||_4^4 / d^2."""
    n = _infer_n(psi)
    return ell4_norm4(characteristic_function(psi)) / (1 << (2 * n))


def alpha_plus_batch(psis: np.ndarray) -> np.ndarray:
    """alpha_plus for a batch of normalized states, one per row.

    Uses one (S, d) x (d, d) product per X-mask, so the cost is S d^3
    flops total; this is the hot path of the Monte-Carlo moment studies.
    """
    s, d = psis.shape
    n = d.bit_length() - 1
    if 1 << n != d:
        raise DimensionError("row length must be a power of 2")
    had = _hadamard(n)
    pref = _xi_prefactor(n)
    idx = np.arange(d)
    conj = psis.conj()
    acc = np.zeros(s)
    for m in range(d):
        w = conj * psis[:, idx ^ m]
        t = w @ had
        xi = (t * pref[:, m][None, :]).real
        acc += np.sum(xi ** 4, axis=1)
    return acc / d**2


def _infer_n(psi: np.ndarray) -> int:
    d = psi.shape[-1]
    n = d.bit_length() - 1
    if psi.ndim != 1 or (1 << n) != d:
        raise DimensionError("state must be a vector of power-of-2 length")
    return n
