"""Moments of the code overlap alpha_+ under Haar-random states.

The first moment is 4/(d(d+3)) by symmetry of the fourth-moment operator.
The second moment reduces to a sum over Pauli pairs of symmetric-subspace
traces tr[P_[8] (W_a^{x4} x W_b^{x4})], which splits into five cases
(both identity, one identity, equal, commuting, anticommuting).  Each case
value is an exact rational assembled from the census of S_8 permutations
without odd cycles, classified by cycle type, balancedness, and the parity
of first-half/second-half transpositions.  The census is hard-coded below;
regenerate_s8_class_counts rebuilds it from scratch by sweeping all 40 320
permutations with the phase-exact Pauli product.

Monte-Carlo utilities estimate the same moments, tail probabilities
against the Chebyshev bound, and the Lipschitz ratio of alpha_+.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .pauli import PauliLabel, alpha_plus_batch, pauli_product
from .stabrep import cycle_type

__all__ = [
    "MomentEstimate",
    "sample_uniform_state",
    "alpha_mean_exact",
    "exact_second_moment",
    "alpha_variance_exact",
    "epsilon_second_moment_exact",
    "average_phi4_ratio_exact",
    "chebyshev_bound",
    "S8_CLASS_COUNTS",
    "regenerate_s8_class_counts",
    "dense_second_moment_qubit",
    "mc_moment_report",
    "concentration_report",
    "lipschitz_probe",
]

# Census of S_8 permutations with no odd-length cycle, by cycle type:
#   total        -- all such permutations,
#   balanced     -- every cycle visits an even number of the first four and
#                   of the last four tensor slots,
#   signed       -- balanced counted with the sign of the number of
#                   first/second-half interleavings per cycle.
S8_CLASS_COUNTS = {
    (2, 2, 2, 2): {"total": 105, "balanced": 9, "signed": 9, "even_cycles": 4},
    (4, 2, 2): {"total": 1260, "balanced": 252, "signed": 108, "even_cycles": 3},
    (4, 4): {"total": 1260, "balanced": 684, "signed": 108, "even_cycles": 2},
    (6, 2): {"total": 3360, "balanced": 1440, "signed": 288, "even_cycles": 2},
    (8,): {"total": 5040, "balanced": 5040, "signed": 432, "even_cycles": 1},
}


def sample_uniform_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform unit vector in C^d (normalized complex Gaussian)."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def _sample_uniform_batch(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=(count, d)) + 1j * rng.normal(size=(count, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# exact rational moments


def alpha_mean_exact(n: int) -> Fraction:
    d = 1 << n
    return Fraction(4, d * (d + 3))


def _sym_dim_frac(d: int, t: int) -> Fraction:
    num = 1
    den = 1
    for i in range(t):
        num *= d + i
        den *= i + 1
    return Fraction(num, den)


def _case_values(d: int) -> dict[str, Fraction]:
    """tr[P_[8] (W_a^{x4} x W_b^{x4})] for the five Pauli-pair cases."""
    fact8 = 40320
    d8 = _sym_dim_frac(d, 8)
    d4 = _sym_dim_frac(d, 4)
    # tr(P_[4] W^{x4}) for W != 1: three (2,2) and six (4) permutations
    p4w = Fraction(3 * d * d + 6 * d, 24)
    equal = Fraction(
        sum(c["total"] * d ** c["even_cycles"] for c in S8_CLASS_COUNTS.values()), fact8
    )
    commuting = Fraction(
        sum(c["balanced"] * d ** c["even_cycles"] for c in S8_CLASS_COUNTS.values()), fact8
    )
    anticommuting = Fraction(
        sum(c["signed"] * d ** c["even_cycles"] for c in S8_CLASS_COUNTS.values()), fact8
    )
    return {
        "both_identity": d8,
        "one_identity": d8 / d4 * p4w,
        "equal": equal,
        "commuting": commuting,
        "anticommuting": anticommuting,
    }


def exact_second_moment(n: int) -> Fraction:
    """E[alpha_+^2] over Haar-random states, as an exact rational.

    Assembled from the five-case trace values and the Pauli pair counts;
    equals 16(d^2+15d+68) / (d^2(d+3)(d+5)(d+6)(d+7)).
    """
    if n > 5:
        raise ValueError("second moment tabulated for n <= 5")
    d = 1 << n
    vals = _case_values(d)
    n_pairs_comm = (d * d - 1) * (d * d // 2 - 2)
    n_pairs_anti = (d * d - 1) * (d * d // 2)
    total = (
        vals["both_identity"]
        + 2 * (d * d - 1) * vals["one_identity"]
        + (d * d - 1) * vals["equal"]
        + n_pairs_comm * vals["commuting"]
        + n_pairs_anti * vals["anticommuting"]
    )
    return total / (d**4 * _sym_dim_frac(d, 8))


def second_moment_closed_form(n: int) -> Fraction:
    d = 1 << n
    return Fraction(16 * (d * d + 15 * d + 68), d * d * (d + 3) * (d + 5) * (d + 6) * (d + 7))


def alpha_variance_exact(n: int) -> Fraction:
    """Var[alpha_+] = 96(d-1) / (d^2 (d+3)^2 (d+5)(d+6)(d+7))."""
    return exact_second_moment(n) - alpha_mean_exact(n) ** 2


def epsilon_second_moment_exact(n: int) -> Fraction:
    """E[epsilon^2] = 6(d-1)/((d+5)(d+6)(d+7)); the mean of epsilon is 0."""
    return alpha_variance_exact(n) / alpha_mean_exact(n) ** 2


def average_phi4_ratio_exact(n: int) -> Fraction:
    """D_[4] E[Phi_4(orbit)] = 1 + 24/((d+4)(d+5)(d+6)(d+7)), exactly."""
    d = 1 << n
    return 1 + Fraction(4, (d - 1) * (d + 4)) * epsilon_second_moment_exact(n)


def chebyshev_bound(n: int, xi: float) -> float:
    """Upper bound on Prob{|epsilon| >= xi} from the exact second moment."""
    if xi <= 0:
        raise ValueError("threshold must be positive")
    return min(1.0, float(epsilon_second_moment_exact(n)) / xi**2)


# ---------------------------------------------------------------------------
# census regeneration and the dense qubit oracle


def regenerate_s8_class_counts() -> dict:
    """Recompute S8_CLASS_COUNTS by brute force over all 40 320 permutations.

    The signed count uses the phase-exact single-qubit Pauli product with
    the anticommuting pair (Z, X): a balanced cycle multiplies out to
    +-identity and the sign is read off the i-power.
    """
    z = PauliLabel(1, 1)
    x = PauliLabel(1, 2)
    out = {}
    for perm in itertools.permutations(range(8)):
        ct = cycle_type(perm)
        if any(l % 2 for l in ct):
            continue
        entry = out.setdefault(
            ct, {"total": 0, "balanced": 0, "signed": 0, "even_cycles": len(ct)}
        )
        entry["total"] += 1
        cycles = _cycles_of(perm)
        balanced = all(
            sum(1 for e in cyc if e < 4) % 2 == 0 and sum(1 for e in cyc if e >= 4) % 2 == 0
            for cyc in cycles
        )
        if not balanced:
            continue
        entry["balanced"] += 1
        sign = 1
        for cyc in cycles:
            prod = PauliLabel.identity(1)
            for e in cyc:
                prod = pauli_product(prod, z if e < 4 else x)
            assert prod.a == 0 and prod.phase_exp in (0, 2)
            sign *= 1 if prod.phase_exp == 0 else -1
        entry["signed"] += sign
    return out


def _cycles_of(perm) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = perm[j]
        cycles.append(cyc)
    return cycles


def dense_second_moment_qubit() -> float:
    """E[alpha_+^2] at n = 1 from dense 256-dimensional projectors.

    Builds the 8-copy symmetric projector by summing all permutation
    operators and contracts it against the doubled code projector; an
    independent check of the combinatorial assembly.
    """
    from .stabrep import stab_projector

    idx = np.arange(256)
    bits = [(idx >> (7 - c)) & 1 for c in range(8)]
    counts = np.zeros((256, 256))
    for perm in itertools.permutations(range(8)):
        y = sum(bits[perm[c]] << (7 - c) for c in range(8))
        np.add.at(counts, (y, idx), 1.0)
    p8 = counts / 40320.0
    p14 = stab_projector(1, 4)
    doubled = np.kron(p14, p14)
    d8 = 9  # dim of the 8-fold symmetric subspace at d = 2
    return float(np.trace(doubled @ p8).real / d8)


# ---------------------------------------------------------------------------
# Monte-Carlo reports


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    second_moment: float
    variance: float
    stderr: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def mc_moment_report(n: int, samples: int, seed: int, batch: int = 20000) -> dict:
    """Monte-Carlo alpha_+ and epsilon moments with the exact values attached.

    Uses a counter-based Philox stream; the seed is embedded in the report
    so any run replays bit-identically.
    """
    d = 1 << n
    rng = np.random.Generator(np.random.Philox(seed))
    alphas = np.empty(samples)
    done = 0
    while done < samples:
        take = min(batch, samples - done)
        psis = _sample_uniform_batch(d, take, rng)
        alphas[done : done + take] = alpha_plus_batch(psis)
        done += take
    eps = d * (d + 3) / 4 * alphas - 1.0
    a_est = MomentEstimate(
        mean=float(alphas.mean()),
        second_moment=float((alphas**2).mean()),
        variance=float(alphas.var(ddof=1)),
        stderr=float(alphas.std(ddof=1) / np.sqrt(samples)),
        samples=samples,
        seed=seed,
    )
    e_est = MomentEstimate(
        mean=float(eps.mean()),
        second_moment=float((eps**2).mean()),
        variance=float(eps.var(ddof=1)),
        stderr=float(eps.std(ddof=1) / np.sqrt(samples)),
        samples=samples,
        seed=seed,
    )
    closed = {
        "alpha_mean": float(alpha_mean_exact(n)),
        "alpha_second_moment": float(exact_second_moment(n)),
        "epsilon_second_moment": float(epsilon_second_moment_exact(n)),
    }
    flags = {
        "alpha_mean_within_4se": abs(a_est.mean - closed["alpha_mean"]) <= 4 * a_est.stderr,
        "epsilon_mean_within_4se": abs(e_est.mean) <= 4 * e_est.stderr,
        "epsilon_second_within_4se": abs(e_est.second_moment - closed["epsilon_second_moment"])
        <= 4 * float((eps**2).std(ddof=1) / np.sqrt(samples)),
    }
    return {
        "n": n,
        "d": d,
        "alpha": a_est.to_dict(),
        "epsilon": e_est.to_dict(),
        "closed_forms": closed,
        "pass": flags,
    }


def concentration_report(n: int, samples: int, thresholds, seed: int) -> dict:
    """Empirical tail frequencies of |epsilon| against the Chebyshev bound.

    Requires samples >= 10^4.  Each threshold passes when the empirical
    frequency does not exceed the bound by more than three binomial
    standard errors.
    """
    if samples < 10**4:
        raise ValueError("need at least 10^4 samples for tail estimates")
    d = 1 << n
    rng = np.random.Generator(np.random.Philox(seed))
    psis = _sample_uniform_batch(d, samples, rng)
    eps = d * (d + 3) / 4 * alpha_plus_batch(psis) - 1.0
    rows = []
    for xi in thresholds:
        bound = chebyshev_bound(n, xi)
        freq = float(np.mean(np.abs(eps) >= xi))
        se = np.sqrt(max(freq * (1 - freq), 1.0 / samples) / samples)
        rows.append(
            {
                "xi": xi,
                "empirical": freq,
                "chebyshev_bound": bound,
                "pass": freq <= bound + 3 * se,
            }
        )
    return {
        "n": n,
        "d": d,
        "samples": samples,
        "seed": seed,
        "epsilon_mean": float(eps.mean()),
        "epsilon_second_moment": float((eps**2).mean()),
        "tails": rows,
        "pass": all(r["pass"] for r in rows),
    }


def lipschitz_probe(n: int, pairs: int, seed: int) -> dict:
    """Largest observed |alpha_+(psi) - alpha_+(phi)| d / ||psi - phi||.

    Mixes independent pairs, small perturbations across scales, and
    perturbed stabilizer states; the proven constant is 5.4 and the
    conjectured sharp constant is 1.
    """
    if pairs < 10**3:
        raise ValueError("need at least 10^3 pairs")
    d = 1 << n
    rng = np.random.Generator(np.random.Philox(seed))
    third = pairs // 3
    a = _sample_uniform_batch(d, pairs, rng)
    a[2 * third :] = 0.0
    a[2 * third :, 0] = 1.0  # perturbed-stabilizer group
    b = np.empty_like(a)
    b[:third] = _sample_uniform_batch(d, third, rng)  # independent pairs
    scales = 10.0 ** rng.uniform(-3, 0, size=pairs - third)
    noise = _sample_uniform_batch(d, pairs - third, rng) * scales[:, None]
    pert = a[third:] + noise
    pert /= np.linalg.norm(pert, axis=1, keepdims=True)
    b[third:] = pert
    dist = np.linalg.norm(a - b, axis=1)
    keep = dist > 1e-8
    da = np.abs(alpha_plus_batch(a[keep]) - alpha_plus_batch(b[keep]))
    ratios = da * d / dist[keep]
    mx = float(ratios.max())
    return {
        "n": n,
        "d": d,
        "pairs": int(keep.sum()),
        "seed": seed,
        "max_ratio": mx,
        "proven_bound": 5.4,
        "conjectured_bound": 1.0,
        "within_proven": mx <= 5.4,
        "within_conjectured": mx <= 1.0,
    }
