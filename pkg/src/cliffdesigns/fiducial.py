"""Constructions of exact and approximate 4-design fiducial vectors.

Three constructive routes are implemented:

* tensor completion -- given a state whose characteristic-function l4-norm
  is small enough, append one qubit whose Bloch vector solves a quartic so
  the product state has epsilon = 0 exactly;
* sign bisection -- walk the chord between a positive-epsilon and a
  negative-epsilon state (stabilizer states and cycler eigenstates are the
  canonical endpoints) until |epsilon| drops below tolerance;
* weighted two-orbit designs -- mix the orbits of a positive and a
  negative state with weights inversely proportional to orbit size and
  proportional to the partner's |epsilon|, which cancels the deviation
  exactly.

The module also builds basis cyclers (Singer unitaries): Clifford elements
of projective order d+1 whose symplectic action has no nonzero fixed point
in any nontrivial power.  Their eigenstates are balanced across a complete
set of mutually unbiased bases and give the negative-epsilon seeds.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import clifford, f2lin
from .designs import bloch_state, epsilon, orbit_frame_potential, sym_dim
from .pauli import characteristic_function, ell4_norm4

__all__ = [
    "BlochVector",
    "WeightedDesign",
    "InfeasibleError",
    "ConvergenceError",
    "named_fiducial",
    "psi_t",
    "hoggar_fiducial",
    "solve_bloch_quartic",
    "tensor_completion",
    "bisection_root",
    "weighted_two_orbit",
    "singer_symplectic",
    "singer_unitary",
    "singer_epsilon_table",
    "five_design_probe",
]

SINGER_SEARCH_MAX_N = 2
SINGER_FIELD_NS = (1, 2, 4, 8)


class InfeasibleError(ValueError):
    """A stated feasibility bound of a construction is violated."""


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted before reaching tolerance."""


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if abs(self.x**2 + self.y**2 + self.z**2 - 1.0) > 1e-12:
            raise ValueError("Bloch vector must be unit length")

    def state(self) -> np.ndarray:
        return bloch_state(self.x, self.y, self.z)

    def quartic(self) -> float:
        return self.x**4 + self.y**4 + self.z**4


@dataclass(frozen=True)
class WeightedDesign:
    states: np.ndarray
    weights: np.ndarray
    phi4: float


def psi_t() -> np.ndarray:
    """Single-qubit magic state, Bloch vector (1,1,1)/sqrt(3)."""
    r = 1.0 / math.sqrt(3.0)
    return bloch_state(r, r, r)


def hoggar_fiducial() -> np.ndarray:
    """Three-qubit fiducial of the 64-line equiangular set; ||Xi||_4^4 = 16/9."""
    v = np.array([1 + 1j, 0, -1, 1, -1j, -1, 0, 0], dtype=complex)
    return v / math.sqrt(6.0)


def named_fiducial(name: str) -> np.ndarray:
    """Resolve 'psi_T', 'hoggar' or 'bloch:x,y,z' to a state vector."""
    if name == "psi_T":
        return psi_t()
    if name == "hoggar":
        return hoggar_fiducial()
    if name.startswith("bloch:"):
        x, y, z = (float(t) for t in name[len("bloch:"):].split(","))
        return bloch_state(x, y, z)
    raise ValueError(f"unknown fiducial name {name!r}")


# ---------------------------------------------------------------------------
# tensor completion


def solve_bloch_quartic(c: float) -> BlochVector:
    """Bloch vector with x^4 + y^4 + z^4 = c - 1, on the symmetric y = z branch.

    Solvable iff 1/3 <= c - 1 <= 1.  Of the two roots of
    (3/2) s^2 - s + 1/2 - (c-1) = 0 for s = x^2 the larger one is taken,
    which makes the output deterministic.
    """
    tau = c - 1.0
    if tau < 1.0 / 3.0 - 1e-12 or tau > 1.0 + 1e-12:
        raise InfeasibleError(f"target quartic {tau} outside [1/3, 1]")
    tau = min(max(tau, 1.0 / 3.0), 1.0)
    s = (1.0 + math.sqrt(max(0.0, 6.0 * tau - 2.0))) / 3.0
    s = min(s, 1.0)
    x = math.sqrt(s)
    y = z = math.sqrt(max(0.0, (1.0 - s) / 2.0))
    out = BlochVector(x, y, z)
    if abs(out.quartic() - tau) > 1e-12:
        raise AssertionError("quartic residual too large")
    return out


def tensor_completion(psi_prev: np.ndarray, n: int) -> np.ndarray:
    """Append one qubit to an (n-1)-qubit state to reach epsilon = 0 exactly.

    Requires 2d/(d+2) <= ||Xi(psi_prev)||_4^4 <= 3d/(d+3) with d = 2^n;
    the appended Bloch vector solves x^4+y^4+z^4 = c-1 for
    c = 4d / [(d+3) ||Xi(psi_prev)||_4^4], and multiplicativity of the
    l4-norm over tensor factors does the rest.
    """
    d = 1 << n
    if psi_prev.shape != (d // 2,):
        raise ValueError("psi_prev must be an (n-1)-qubit state")
    ell = ell4_norm4(characteristic_function(psi_prev))
    lo, hi = 2 * d / (d + 2), 3 * d / (d + 3)
    if not lo - 1e-9 <= ell <= hi + 1e-9:
        raise InfeasibleError(
            f"||Xi||_4^4 = {ell} outside [{lo}, {hi}] for n={n}; tensor completion infeasible"
        )
    c = 4 * d / ((d + 3) * ell)
    return np.kron(psi_prev, solve_bloch_quartic(c).state())


# ---------------------------------------------------------------------------
# bisection on the deviation sign


def bisection_root(
    psi1: np.ndarray,
    psi2: np.ndarray,
    tol: float = 1e-8,
    max_iter: int = 200,
    mode: str = "bisect",
) -> np.ndarray:
    """Normalized state with |epsilon| <= tol between the two endpoints.

    Needs epsilon(psi1) > 0 > epsilon(psi2) and a nonzero overlap; the
    global phase of psi2 is re-fixed every iteration so the overlap stays
    positive.  mode='secant' weights the endpoints by their epsilon values
    instead of taking the midpoint.
    """
    if mode not in ("bisect", "secant"):
        raise ValueError("mode must be 'bisect' or 'secant'")
    e1 = epsilon(psi1)
    e2 = epsilon(psi2)
    if abs(e2) <= tol:
        return psi2
    if abs(e1) <= tol:
        return psi1
    if not (e1 > 0 > e2):
        raise InfeasibleError(f"need epsilon(psi1) > 0 > epsilon(psi2), got {e1}, {e2}")
    if abs(np.vdot(psi1, psi2)) < 1e-12:
        raise InfeasibleError("endpoints are orthogonal")
    p1, p2 = psi1.copy(), psi2.copy()
    for _ in range(max_iter):
        ov = np.vdot(p1, p2)
        if abs(ov) < 1e-14:
            raise ConvergenceError("endpoints became orthogonal during iteration")
        p2 = p2 * (ov.conjugate() / abs(ov))
        if mode == "bisect":
            mid = p1 + p2
        else:
            mid = e1 * p1 - e2 * p2
        mid = mid / np.linalg.norm(mid)
        em = epsilon(mid)
        if abs(em) <= tol:
            return mid
        if em >= 0:
            p1, e1 = mid, em
        else:
            p2, e2 = mid, em
    raise ConvergenceError(f"|epsilon| > {tol} after {max_iter} iterations")


# ---------------------------------------------------------------------------
# weighted two-orbit designs


def weighted_two_orbit(psi1: np.ndarray, psi2: np.ndarray, n: int) -> WeightedDesign:
    """Exact weighted 4-design from the union of two Clifford orbits.

    With epsilon(psi1) > 0 > epsilon(psi2), per-state weights
    |eps2| / (|orb1| (|eps1|+|eps2|)) on the first orbit and the mirrored
    expression on the second cancel the code-component deviation exactly.
    """
    e1 = epsilon(psi1)
    e2 = epsilon(psi2)
    if not (e1 > 0 > e2):
        raise InfeasibleError(f"need epsilon(psi1) > 0 > epsilon(psi2), got {e1}, {e2}")
    orb1 = np.array(clifford.projective_orbit(psi1, n))
    orb2 = np.array(clifford.projective_orbit(psi2, n))
    tot = abs(e1) + abs(e2)
    w1 = abs(e2) / (len(orb1) * tot)
    w2 = abs(e1) / (len(orb2) * tot)
    states = np.concatenate([orb1, orb2])
    weights = np.concatenate([np.full(len(orb1), w1), np.full(len(orb2), w2)])
    phi4 = _fourth_potential_via_moment(states, weights)
    return WeightedDesign(states=states, weights=weights, phi4=phi4)


def _fourth_potential_via_moment(states: np.ndarray, weights: np.ndarray,
                                 chunk: int = 2048) -> float:
    """Weighted 4th frame potential as the squared Frobenius norm of the
    weighted 4th moment operator; avoids the K^2 Gram matrix."""
    k, d = states.shape
    mom = np.zeros((d**4, d**4), dtype=complex)
    for lo in range(0, k, chunk):
        blk = states[lo : lo + chunk]
        w = weights[lo : lo + chunk]
        t4 = np.einsum("ka,kb,kc,ke->kabce", blk, blk, blk, blk).reshape(len(blk), -1)
        mom += (t4.conj() * w[:, None]).T @ t4
    return float(np.sum(np.abs(mom) ** 2))


# ---------------------------------------------------------------------------
# GF(2^m) machinery for basis cyclers


def _gf_mul(a: int, b: int, p: int, m: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= p
    return out


def _gf_pow(a: int, e: int, p: int, m: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = _gf_mul(out, a, p, m)
        a = _gf_mul(a, a, p, m)
        e >>= 1
    return out


def _prime_factors(x: int) -> list[int]:
    out = []
    f = 2
    while f * f <= x:
        if x % f == 0:
            out.append(f)
            while x % f == 0:
                x //= f
        f += 1
    if x > 1:
        out.append(x)
    return out


@functools.lru_cache(maxsize=None)
def _primitive_polynomial(m: int) -> int:
    """Smallest degree-m polynomial over GF(2) whose root generates GF(2^m)*."""
    order = (1 << m) - 1
    factors = _prime_factors(order)
    for low in range(1, 1 << m, 2):
        p = (1 << m) | low
        if _gf_pow(2, order, p, m) != 1:
            continue
        if all(_gf_pow(2, order // q, p, m) != 1 for q in factors):
            return p
    raise AssertionError(f"no primitive polynomial of degree {m}")


def _gf_trace_vector(p: int, m: int) -> int:
    """Bitmask t with Tr(u) = parity(popcount(u & t)); Tr(u) = sum u^{2^j}."""
    t = 0
    for i in range(m):
        u = 1 << i
        acc = u
        sq = u
        for _ in range(m - 1):
            sq = _gf_mul(sq, sq, p, m)
            acc ^= sq
        assert acc in (0, 1)
        t |= acc << i
    return t


def _mult_matrix_cols(g: int, p: int, m: int) -> list[int]:
    return [_gf_mul(g, 1 << i, p, m) for i in range(m)]


def _f2_inverse(rows: tuple[int, ...], nn: int) -> tuple[int, ...]:
    aug = [rows[i] | (1 << (nn + i)) for i in range(nn)]
    r = 0
    for c in range(nn):
        piv = next((i for i in range(r, nn) if (aug[i] >> c) & 1), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(nn):
            if i != r and (aug[i] >> c) & 1:
                aug[i] ^= aug[r]
        r += 1
    return tuple(row >> nn for row in aug)


@functools.lru_cache(maxsize=None)
def _singer_symplectic_field(n: int) -> f2lin.F2Matrix:
    """Order-(d+1) fixed-point-free symplectic matrix from GF(4^n) arithmetic.

    Multiplication by a norm-one element of order 2^n + 1 preserves the
    alternating form Tr(u v^{2^n} beta) once beta is trace-orthogonal to
    the subfield GF(2^n); expressing that form in a symplectic basis gives
    a standard-form matrix.
    """
    m = 2 * n
    p = _primitive_polynomial(m)
    tr = _gf_trace_vector(p, m)

    def trace(u: int) -> int:
        return (u & tr).bit_count() & 1

    def frob_n(u: int) -> int:
        return _gf_pow(u, 1 << n, p, m)

    alpha = _gf_pow(2, (1 << n) - 1, p, m)
    # basis of the subfield GF(2^n) = fixed points of u -> u^{2^n}
    frob_cols = [frob_n(1 << i) ^ (1 << i) for i in range(m)]
    fq_basis = _kernel_basis(frob_cols, m)
    assert len(fq_basis) == n
    beta = next(
        b for b in range(1, 1 << m) if all(trace(_gf_mul(c, b, p, m)) == 0 for c in fq_basis)
    )

    def form(u: int, v: int) -> int:
        return trace(_gf_mul(_gf_mul(u, frob_n(v), p, m), beta, p, m))

    # the subfield is one line of the spread the cycler permutes; anchoring
    # it on the z-type coordinates makes the computational basis one of the
    # d+1 cycled bases
    cols = _symplectic_basis_for_form(form, m, first_half=fq_basis)
    pmat_rows = tuple(f2lin._cols_to_rows(cols, m))
    pinv_rows = _f2_inverse(pmat_rows, m)
    alpha_rows = tuple(f2lin._cols_to_rows(_mult_matrix_cols(alpha, p, m), m))
    F = f2lin.F2Matrix(
        f2lin._mat_mul(pinv_rows, f2lin._mat_mul(alpha_rows, pmat_rows)), n
    )
    if not f2lin.is_symplectic(F):
        raise AssertionError("field-built cycler action is not symplectic")
    if not _is_cycler_action(F, n):
        raise AssertionError("field-built action is not a cycler")
    if not _cycles_z_spread(F, n):
        raise AssertionError("field-built cycler misses the z-type spread line")
    return F


def _kernel_basis(cols: list[int], m: int) -> list[int]:
    """Basis of ker of the map with the given columns (GF(2))."""
    rows = tuple(f2lin._cols_to_rows(cols, m))
    # solve rows . v = 0 by elimination over the transpose
    basis = []
    pivots = {}
    for v in range(1, 1 << m):
        # greedily collect independent kernel vectors
        if f2lin._mat_vec(rows, v) == 0:
            red = f2lin._reduce(v, tuple(pivots.values()))
            if red:
                pivots[red.bit_length() - 1] = red
                basis.append(v)
    return basis


def _symplectic_basis_for_form(form, m: int, first_half: list[int] | None = None) -> list[int]:
    """Columns (u1, v1, u2, v2, ...) that bring a nondegenerate alternating
    form to the standard block-diagonal shape.

    When first_half spans an isotropic subspace of dimension m/2, all u_i
    are drawn from it, so that subspace becomes the span of the
    even-numbered basis vectors.
    """

    def project(pool, pairs):
        reduced = []
        pivots: tuple = ()
        for c in pool:
            for (a, b) in pairs:
                if form(a, c):
                    c ^= b
                if form(b, c):
                    c ^= a
            if f2lin._reduce(c, pivots) != 0:
                pivots = f2lin._rref(pivots + (c,))
                reduced.append(c)
        return reduced

    all_vecs = [1 << j for j in range(m)]
    u_pool = list(first_half) if first_half is not None else all_vecs
    pairs: list[tuple[int, int]] = []
    while 2 * len(pairs) < m:
        u_red = project(u_pool, pairs)
        v_red = project(all_vecs, pairs)
        u = u_red[0]
        v = next(c for c in v_red if form(u, c))
        pairs.append((u, v))
        u_pool = u_red
    cols = []
    for (a, b) in pairs:
        cols += [a, b]
    return cols


def _is_cycler_action(F: f2lin.F2Matrix, n: int) -> bool:
    """Order d+1 with all powers F^1..F^d free of nonzero fixed points."""
    d = 1 << n
    power = F
    for _ in range(d):
        if f2lin.fixed_space_dim(power) != 0:
            return False
        power = power @ F
    return power.rows == f2lin.F2Matrix.identity(n).rows


def _cycles_z_spread(F: f2lin.F2Matrix, n: int) -> bool:
    """Whether the orbit of the z-type subspace under F is a spread.

    Then the d+1 bases U^k (computational basis) are pairwise mutually
    unbiased for any unitary U inducing F.
    """
    mz = tuple(1 << (2 * i) for i in range(n))
    d = 1 << n
    power = F
    for _ in range(d):
        img = tuple(power.apply(b) for b in mz)
        if f2lin._rank(img + mz) != 2 * n:
            return False
        power = power @ F
    return True


@functools.lru_cache(maxsize=None)
def singer_symplectic(n: int) -> f2lin.F2Matrix:
    """Symplectic action of a basis cycler: order d+1, fixed-point-free powers.

    For n <= 2 found by exhaustive search (the reference path); for
    n in {4, 8} built from finite-field multiplication.
    """
    if n <= SINGER_SEARCH_MAX_N:
        for F in f2lin.enumerate_sp(n):
            if _is_cycler_action(F, n) and _cycles_z_spread(F, n):
                return F
        raise AssertionError("no cycler found in exhaustive search")
    if n in SINGER_FIELD_NS:
        return _singer_symplectic_field(n)
    raise f2lin.CapacityError(f"basis cyclers provided for n in {SINGER_FIELD_NS}")


def singer_unitary(n: int) -> clifford.CliffordElement:
    """A Clifford basis cycler: projective order d+1, nondegenerate spectrum."""
    U = clifford.lift_symplectic(singer_symplectic(n))
    d = U.d
    power = np.linalg.matrix_power(U.matrix, d + 1)
    scal = power[0, 0]
    if abs(abs(scal) - 1) > 1e-9 or not np.allclose(power, scal * np.eye(d), atol=1e-9):
        raise AssertionError("U^{d+1} is not scalar")
    eigvals = np.linalg.eigvals(U.matrix)
    phases = np.sort(np.angle(eigvals))
    gaps = np.diff(np.concatenate([phases, [phases[0] + 2 * np.pi]]))
    if np.min(gaps) < 1e-6:
        raise AssertionError("cycler spectrum is degenerate")
    return U


def singer_eigenstates(n: int) -> np.ndarray:
    """Eigenvectors of the basis cycler, one per row."""
    U = singer_unitary(n)
    _, vecs = np.linalg.eig(U.matrix)
    vecs = vecs / np.linalg.norm(vecs, axis=0, keepdims=True)
    return vecs.T


def singer_epsilon_table(n_list=(1, 2, 4), spread_atol: float = 1e-9) -> list[dict]:
    """epsilon(psi_n x psi_T) for cycler eigenstates psi_n, per qubit count.

    All eigenstates of one cycler share the same value; the spread across
    the spectrum is asserted below spread_atol and reported.
    """
    pt = psi_t()
    out = []
    for n in n_list:
        vecs = singer_eigenstates(n)
        eps = np.array([epsilon(np.kron(v, pt)) for v in vecs])
        spread = float(eps.max() - eps.min())
        if spread > spread_atol:
            raise AssertionError(f"eigenstate deviations differ by {spread} at n={n}")
        ell4 = float(np.mean([ell4_norm4(characteristic_function(v)) for v in vecs]))
        out.append(
            {
                "n": n,
                "epsilon": float(eps.mean()),
                "spread": spread,
                "eigenstate_ell4": ell4,
            }
        )
    return out


# ---------------------------------------------------------------------------
# higher-design probe


def five_design_probe(psi: np.ndarray, n: int, eps_atol: float = 1e-8) -> dict:
    """Frame potentials of the orbit of an epsilon-root, against design minima.

    Records the fifth-potential deviation (and sixth/seventh for n = 1);
    nothing beyond the root precondition is asserted.
    """
    e = epsilon(psi)
    if abs(e) > eps_atol:
        raise InfeasibleError(f"|epsilon| = {abs(e)} exceeds {eps_atol}; not a root")
    d = 1 << n
    report = {"n": n, "epsilon": e}
    ts = (5, 6, 7) if n == 1 else (5,)
    for t in ts:
        val = orbit_frame_potential(psi, t)
        report[f"phi{t}"] = val
        report[f"phi{t}_minimum"] = 1.0 / sym_dim(d, t)
        report[f"phi{t}_deviation"] = val - 1.0 / sym_dim(d, t)
    return report
