"""Programmable-discriminator POVMs.

Builders for the three measurement families (equal-dimension optimal,
dimension-independent universal, and the zero-success antisymmetric one),
the unambiguity verifier, success probabilities, and the covariance checks
an optimal discriminator must satisfy.

The measurement acts on n program registers plus one data register, each of
dimension m.  Element i >= 1 of a built POVM is c · I on register i tensored
with the antisymmetric projector on the remaining n registers (taken in
ascending order); element 0 is the inconclusive remainder I - Σ_i Π_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .antisym import all_permutations, antisym_projector, permutation_operator
from .config import check_square
from .errors import IndexOutOfRange, InvalidPovm, LayoutMismatch, NotHermitian, WrongRegime
from .random_states import rand_unitary
from .tensor_algebra import (
    SubsystemLayout,
    gram,
    gram_det,
    kron_chain,
    max_abs,
    partial_trace,
    reorder_factors,
    require_hermitian,
    require_normalized,
)

PSD_RESIDUAL_TOL = 1e-9
COMPLETENESS_TOL = 1e-9
LEAKAGE_TOL = 1e-9
UNITARY_COV_TOL = 1e-9
PERMUTATION_COV_TOL = 1e-10
REDUCTION_TOL = 1e-9
REDUCTION_SPREAD_TOL = 1e-10


@dataclass(frozen=True)
class Povm:
    """Measurement {Π_0, Π_1, …, Π_n} on n+1 registers of dimension m."""

    m: int
    n: int
    elements: tuple[np.ndarray, ...]
    layout: SubsystemLayout
    c: float | None = None
    family: str | None = None

    @property
    def dim(self) -> int:
        return self.layout.dim

    def residuals(self) -> tuple[list[float], float]:
        """(min eigenvalue per element, completeness residual ‖ΣΠ - I‖_max)."""
        mins = [float(np.linalg.eigvalsh(e)[0]) for e in self.elements]
        total = sum(self.elements)
        comp = max_abs(total - np.eye(self.dim))
        return mins, comp

    def is_valid(self) -> bool:
        mins, comp = self.residuals()
        return min(mins) >= -PSD_RESIDUAL_TOL and comp <= COMPLETENESS_TOL


@dataclass(frozen=True)
class ProgramInput:
    """Program registers loaded with the candidate states, data register with state j."""

    states: np.ndarray
    data_index: int
    vector: np.ndarray


def program_input(states, j: int, cap: int | None = None) -> ProgramInput:
    """Total input |ψ_1>…|ψ_n>|ψ_j> for data register prepared in state j (1-based)."""
    s = require_normalized(states)
    n = s.shape[0]
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"data index {j} outside 1..{n}")
    vec = kron_chain([s[i] for i in range(n)] + [s[j - 1]], cap=cap)
    return ProgramInput(states=s, data_index=int(j), vector=vec)


def _identity_times_antisym(m: int, n: int, cap: int | None = None) -> list[np.ndarray]:
    """Blocks B_i = I on register i ⊗ antisymmetric projector on the other n registers."""
    dim = m ** (n + 1)
    check_square(dim, cap, "POVM element")
    phi = antisym_projector(m, n, cap=cap).matrix
    base = np.kron(np.eye(m, dtype=complex), phi)  # register order [i, rest ascending]
    dims = [m] * (n + 1)
    blocks = []
    for i in range(1, n + 1):
        slot_labels = [i] + [r for r in range(1, n + 2) if r != i]
        order = [slot_labels.index(j) + 1 for j in range(1, n + 2)]
        blocks.append(reorder_factors(base, dims, order))
    return blocks


def _assemble(m: int, n: int, c: float, family: str, cap: int | None) -> Povm:
    blocks = _identity_times_antisym(m, n, cap)
    elements = [c * b for b in blocks]
    pi0 = np.eye(m ** (n + 1), dtype=complex) - sum(elements)
    return Povm(
        m=m,
        n=n,
        elements=tuple([pi0] + elements),
        layout=SubsystemLayout.uniform(m, n + 1),
        c=c,
        family=family,
    )


def build_optimal_equal(n: int, cap: int | None = None) -> Povm:
    """Optimal discriminator for n states spanning an n-dimensional space.

    Uses the largest coefficient c = n/(n+1) that keeps the inconclusive
    element positive; the success probability on a program with Gram matrix
    X is n·det(X)/(n+1)! for every state index.
    """
    if n < 2:
        raise WrongRegime(f"need at least two states, got n={n}")
    return _assemble(n, n, n / (n + 1), "optimal", cap)


def build_universal(m: int, n: int, cap: int | None = None) -> Povm:
    """Universal discriminator for n states in dimension m > n.

    The coefficient c = 1/n is the largest keeping the inconclusive element
    positive within this family; the success probability det(X)/(n·n!) does
    not depend on m.
    """
    if n < 2:
        raise WrongRegime(f"need at least two states, got n={n}")
    if m <= n:
        raise WrongRegime(
            f"universal family needs m > n, got m={m}, n={n} (use build_optimal_equal for m=n)"
        )
    return _assemble(m, n, 1.0 / n, "universal", cap)


def build_trivial_antisym(m: int, n: int, cap: int | None = None) -> Povm:
    """Unambiguous but useless measurement: Π_i = Φ(n+1)/n for every i ≥ 1.

    Every success probability is exactly zero; for m < n+1 the antisymmetric
    projector on n+1 registers vanishes and the POVM degenerates to {I, 0, …}.
    """
    if n < 2:
        raise WrongRegime(f"need at least two states, got n={n}")
    if m < n:
        raise WrongRegime(f"no discriminator is defined for m={m} < n={n}")
    dim = m ** (n + 1)
    check_square(dim, cap, "POVM element")
    phi = antisym_projector(m, n + 1, cap=cap).matrix
    elements = [phi / n for _ in range(n)]
    pi0 = np.eye(dim, dtype=complex) - sum(elements)
    return Povm(
        m=m,
        n=n,
        elements=tuple([pi0] + elements),
        layout=SubsystemLayout.uniform(m, n + 1),
        c=1.0 / n,
        family="trivial",
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    """Residuals of the unambiguity criterion and of POVM validity."""

    leakages: tuple[float, ...]  # per element i >= 1
    psd_mins: tuple[float, ...]  # per element, including element 0
    completeness_residual: float
    leakage_tol: float
    psd_tol: float
    completeness_tol: float

    @property
    def passed(self) -> bool:
        return (
            all(l <= self.leakage_tol for l in self.leakages)
            and all(p >= -self.psd_tol for p in self.psd_mins)
            and self.completeness_residual <= self.completeness_tol
        )

    def max_leakage(self) -> float:
        return max(self.leakages) if self.leakages else 0.0


def verify_unambiguous(povm: Povm) -> VerificationReport:
    """Check that each Tr_i(Π_i) is supported inside the antisymmetric subspace.

    The leakage of element i is ‖(I-Φ)·Tr_i(Π_i)·(I-Φ)‖_max with Φ the
    antisymmetric projector on the n remaining registers; the report also
    carries the PSD and completeness residuals.  Structurally broken input
    (wrong count, shape or hermiticity) raises InvalidPovm.
    """
    m, n = povm.m, povm.n
    dim = m ** (n + 1)
    if len(povm.elements) != n + 1:
        raise InvalidPovm(f"expected {n + 1} elements, got {len(povm.elements)}")
    for idx, e in enumerate(povm.elements):
        if e.shape != (dim, dim):
            raise InvalidPovm(f"element {idx} has shape {e.shape}, expected {(dim, dim)}")
        try:
            require_hermitian(e)
        except NotHermitian as exc:
            raise InvalidPovm(f"element {idx} is not Hermitian: {exc}") from exc

    psd_mins, completeness = povm.residuals()
    phi = antisym_projector(m, n).matrix
    complement = np.eye(m**n, dtype=complex) - phi
    leakages = []
    for i in range(1, n + 1):
        reduced = partial_trace(povm.elements[i], povm.layout, {i})
        leakages.append(max_abs(complement @ reduced @ complement))
    return VerificationReport(
        leakages=tuple(leakages),
        psd_mins=tuple(psd_mins),
        completeness_residual=completeness,
        leakage_tol=LEAKAGE_TOL,
        psd_tol=PSD_RESIDUAL_TOL,
        completeness_tol=COMPLETENESS_TOL,
    )


# ---------------------------------------------------------------------------
# success probabilities


def success_prob_analytic(states, regime: str) -> float:
    """Closed-form success probability for a built POVM on the given states.

    regime "equal": n·det(X)/(n+1)!; regime "universal": det(X)/(n·n!).
    Linearly dependent states give 0.
    """
    s = require_normalized(states)
    n = s.shape[0]
    det = gram_det(s)
    if regime == "equal":
        return n * det / math.factorial(n + 1)
    if regime == "universal":
        return det / (n * math.factorial(n))
    raise ValueError(f"unknown regime {regime!r} (expected 'equal' or 'universal')")


def success_prob_operational(povm: Povm, states, i: int) -> float:
    """Quadratic form <ψ_i^n| Π_i |ψ_i^n> of the actual measurement."""
    s = require_normalized(states)
    if s.shape != (povm.n, povm.m):
        raise LayoutMismatch(
            f"state set of shape {s.shape} does not match POVM with m={povm.m}, n={povm.n}"
        )
    if not 1 <= i <= povm.n:
        raise IndexOutOfRange(f"state index {i} outside 1..{povm.n}")
    vec = program_input(s, i).vector
    return float((vec.conj() @ povm.elements[i] @ vec).real)


def cross_term(povm: Povm, states, i: int, j: int) -> float:
    """<ψ_j^n| Π_i |ψ_j^n> — must vanish for i ≠ j if the POVM is unambiguous."""
    s = require_normalized(states)
    vec = program_input(s, j).vector
    return float((vec.conj() @ povm.elements[i] @ vec).real)


def known_state_optimum(states) -> float:
    """Worst-case optimum when the states are known: λ_min of their Gram matrix."""
    s = require_normalized(states)
    return max(float(np.linalg.eigvalsh(gram(s))[0]), 0.0)


def efficiency_bounds(p_s: float, n: int) -> tuple[float, float]:
    """Envelope [p_s^n/(n·n!), p_s/(n·n!)] tied to the known-state optimum p_s.

    Both ends coincide with the universal success probability when p_s is 0
    or 1.  Note that the upper end is not a sound bound for generic sets:
    det(X) can exceed λ_min(X) (for n = 2 it always does, by the factor
    1 + |overlap|), so callers should treat the interval as a heuristic
    envelope rather than a guarantee.
    """
    if not -1e-12 <= p_s <= 1.0 + 1e-12:
        raise ValueError(f"p_s must lie in [0, 1], got {p_s}")
    p_s = min(max(p_s, 0.0), 1.0)
    denom = n * math.factorial(n)
    return (p_s**n / denom, p_s / denom)


# ---------------------------------------------------------------------------
# covariance properties of optimal discriminators


@dataclass(frozen=True)
class CovarianceReport:
    """Residuals of the symmetry properties an optimal discriminator satisfies."""

    unitary_residual: float
    permutation_residual: float
    reduction_residual: float
    reduction_constants: tuple[float, ...]
    reduction_spread: float
    trials: int
    seed: int

    @property
    def unitary_ok(self) -> bool:
        return self.unitary_residual <= UNITARY_COV_TOL

    @property
    def permutation_ok(self) -> bool:
        return self.permutation_residual <= PERMUTATION_COV_TOL

    @property
    def reduction_ok(self) -> bool:
        return self.reduction_residual <= REDUCTION_TOL and self.reduction_spread <= REDUCTION_SPREAD_TOL

    @property
    def passed(self) -> bool:
        return self.unitary_ok and self.permutation_ok and self.reduction_ok


def check_covariance(povm: Povm, trials: int = 20, seed: int = 7) -> CovarianceReport:
    """Probe the three symmetries of an optimal discriminator.

    1. Collective unitary invariance U^⊗(n+1) Π_i U†^⊗(n+1) = Π_i, sampled
       over Haar-random U (the property is exact per U, so sampling suffices).
    2. Program-register covariance (σ_P^{-1} ⊗ I) Π_i (σ_P ⊗ I) = Π_{σ(i)}
       for every permutation σ of the n program registers.
    3. Reduction to the own register: Tr over all other registers of Π_i is
       a multiple of the identity, with the same constant for every i ≥ 1.
    """
    m, n = povm.m, povm.n
    rng = np.random.default_rng(seed)
    eye_data = np.eye(m, dtype=complex)

    unitary_residual = 0.0
    for _ in range(trials):
        u = rand_unitary(m, rng)
        lifted = kron_chain([u] * (n + 1))
        for e in povm.elements:
            unitary_residual = max(
                unitary_residual, max_abs(lifted @ e @ lifted.conj().T - e)
            )

    permutation_residual = 0.0
    for sigma in all_permutations(n):
        lifted = np.kron(permutation_operator(sigma, m), eye_data)
        for i in range(1, n + 1):
            conjugated = lifted.conj().T @ povm.elements[i] @ lifted
            permutation_residual = max(
                permutation_residual, max_abs(conjugated - povm.elements[sigma(i)])
            )

    constants = []
    reduction_residual = 0.0
    everything = set(range(1, n + 2))
    for i in range(1, n + 1):
        reduced = partial_trace(povm.elements[i], povm.layout, everything - {i})
        c = float(np.trace(reduced).real) / m
        constants.append(c)
        reduction_residual = max(reduction_residual, max_abs(reduced - c * eye_data))
    spread = max(constants) - min(constants) if constants else 0.0

    return CovarianceReport(
        unitary_residual=unitary_residual,
        permutation_residual=permutation_residual,
        reduction_residual=reduction_residual,
        reduction_constants=tuple(constants),
        reduction_spread=spread,
        trials=trials,
        seed=seed,
    )
