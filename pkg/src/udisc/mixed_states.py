"""Unambiguous discrimination of mixed states via pure-state programs.

Each density operator ρ_i splits uniquely as ρ_i = ρ̃_i + ρ̂_i where ρ̂_i is
supported inside the span of the other states' supports and the support of
ρ̃_i avoids that span entirely.  The ρ̃_i (plus ρ̃_0 = Σ ρ̂_i) are realised
by linearly independent pure-state parts of a single product program, which
an N-state discriminator then measures; outcomes grouped by part can only
land in the data state's own part or in part 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .discriminator import build_optimal_equal, build_universal
from .errors import LayoutMismatch, ProgramNotIndependent, WrongRegime
from .tensor_algebra import (
    Subspace,
    gram_det,
    hermitize,
    kron_chain,
    max_abs,
    psd_sqrt,
    require_psd,
    subspace_intersection,
    subspace_preimage,
    subspace_sum,
    support_projector,
)

PART_EIGENVALUE_TOL = 1e-9
DISCRIMINABLE_TRACE_TOL = 1e-9
PROGRAM_DET_TOL = 1e-12


def require_density(rho) -> np.ndarray:
    """Validate a density operator: PSD within tolerance, unit trace within 1e-10."""
    rho = require_psd(rho)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > 1e-10:
        raise ValueError(f"density operator has trace {tr!r}, expected 1")
    return rho


@dataclass(frozen=True)
class CoreDecomposition:
    """Per-state splits ρ_i = ρ̃_i + ρ̂_i plus the pooled remainder ρ̃_0 = Σ ρ̂_i."""

    tildes: tuple[np.ndarray, ...]
    hats: tuple[np.ndarray, ...]
    tilde0: np.ndarray

    @property
    def n(self) -> int:
        return len(self.tildes)

    @property
    def dim(self) -> int:
        return self.tilde0.shape[0]

    def tilde_traces(self) -> list[float]:
        return [float(np.trace(t).real) for t in self.tildes]

    def residuals(self, rhos) -> dict[str, float]:
        """Worst-case residuals of the three defining conditions.

        split: ‖ρ_i - ρ̃_i - ρ̂_i‖_max.
        containment: ρ̂_i sandwiched by the complement of Σ_{j≠i} supp(ρ_j).
        intersection_dim: largest dimension of supp(ρ̃_i) ∩ Σ_{j≠i} supp(ρ_j),
        computed at threshold 1e-7.
        """
        mats = [np.asarray(r, dtype=complex) for r in rhos]
        split = 0.0
        containment = 0.0
        inter_dim = 0
        supports = [support_projector(r) for r in mats]
        for i in range(self.n):
            split = max(split, max_abs(mats[i] - self.tildes[i] - self.hats[i]))
            others = _support_union(supports, skip=i)
            comp = others.complement_projector()
            containment = max(containment, max_abs(comp @ self.hats[i] @ comp))
            tilde_supp = support_projector(self.tildes[i])
            inter = subspace_intersection(tilde_supp, others, tol=1e-7)
            inter_dim = max(inter_dim, inter.dim)
        return {
            "split": split,
            "containment": containment,
            "intersection_dim": float(inter_dim),
        }


def _support_union(supports: list[Subspace], skip: int) -> Subspace:
    rest = [s for j, s in enumerate(supports) if j != skip]
    return reduce(subspace_sum, rest)


def core_decompose(rhos) -> CoreDecomposition:
    """Split each state against the span of the others.

    With S_i = Σ_{j≠i} supp(ρ_j) and V the part of supp(ρ_i) that √ρ_i maps
    into S_i, the projector Q onto V gives ρ̂_i = √ρ_i Q √ρ_i (supported in
    S_i by construction) and ρ̃_i = ρ_i - ρ̂_i, whose support cannot meet S_i:
    any vector of it pulls back under √ρ_i to V ∩ V^⊥ = {0}.
    """
    mats = [require_density(r) for r in rhos]
    if len(mats) < 2:
        raise ValueError("need at least two states to decompose")
    dim = mats[0].shape[0]
    if any(r.shape != (dim, dim) for r in mats):
        raise LayoutMismatch("all density operators must share one dimension")

    supports = [support_projector(r) for r in mats]
    tildes, hats = [], []
    for i, rho in enumerate(mats):
        others = _support_union(supports, skip=i)
        root = psd_sqrt(rho)
        pulled_back = subspace_preimage(others, root)
        v = subspace_intersection(pulled_back, supports[i])
        q = v.projector()
        hat = hermitize(root @ q @ root)
        hats.append(hat)
        tildes.append(hermitize(rho - hat))
    tilde0 = hermitize(sum(hats))
    return CoreDecomposition(tildes=tuple(tildes), hats=tuple(hats), tilde0=tilde0)


def discriminable(rhos) -> bool:
    """True when every per-state core ρ̃_i keeps positive trace."""
    cores = core_decompose(rhos)
    return all(t > DISCRIMINABLE_TRACE_TOL for t in cores.tilde_traces())


@dataclass(frozen=True)
class MixedProgram:
    """Pure-state parts realising the cores, assembled into one product program.

    Part 0 carries ρ̃_0, parts 1..n the per-state cores; part i occupies the
    program registers listed in part_registers[i] (1-based, empty when the
    core vanishes).
    """

    dim: int
    part_states: tuple[np.ndarray, ...]  # each (k_i, dim); rows are unit vectors
    part_weights: tuple[np.ndarray, ...]
    part_registers: tuple[tuple[int, ...], ...]
    states: np.ndarray  # all N program states stacked in register order
    vector: np.ndarray  # |Ψ>, dimension dim**N
    det_gram: float

    @property
    def total(self) -> int:
        return self.states.shape[0]

    def part_trace(self, i: int) -> float:
        return float(np.sum(self.part_weights[i]))


def build_program(cores: CoreDecomposition, cap: int | None = None) -> MixedProgram:
    """Spectral programs: each part holds the eigenvectors of its core.

    Eigenvalues act as the (sub-normalized) mixing weights, so each part
    reproduces its core exactly and is orthonormal within itself.  The union
    of all parts must be linearly independent; otherwise
    ProgramNotIndependent is raised.
    """
    ops = [cores.tilde0] + list(cores.tildes)
    part_states, part_weights = [], []
    for op in ops:
        w, v = np.linalg.eigh(hermitize(op))
        sel = w > PART_EIGENVALUE_TOL
        vecs = v[:, sel][:, ::-1].T  # descending weight order
        part_states.append(vecs)
        part_weights.append(w[sel][::-1])

    all_states = np.vstack([p for p in part_states if p.size] or [np.zeros((0, cores.dim))])
    total = all_states.shape[0]
    if total == 0:
        raise ValueError("all cores vanished; nothing to program")
    det = gram_det(all_states)
    if det <= PROGRAM_DET_TOL:
        raise ProgramNotIndependent(
            f"program states have Gram determinant {det:.3e}; the parts do not form "
            "a linearly independent family"
        )

    registers = []
    next_register = 1
    for p in part_states:
        registers.append(tuple(range(next_register, next_register + p.shape[0])))
        next_register += p.shape[0]

    vector = kron_chain([all_states[r] for r in range(total)], cap=cap)
    return MixedProgram(
        dim=cores.dim,
        part_states=tuple(part_states),
        part_weights=tuple(part_weights),
        part_registers=tuple(registers),
        states=all_states,
        vector=vector,
        det_gram=det,
    )


@dataclass(frozen=True)
class PartProbabilities:
    """Outcome probabilities of the N-state discriminator grouped by part."""

    parts: tuple[float, ...]  # p_0 .. p_n
    inconclusive: float  # POVM outcome 0
    outcome_probs: tuple[float, ...]  # raw POVM outcomes 0..N
    regime: str

    @property
    def total(self) -> float:
        return sum(self.parts) + self.inconclusive


def part_probabilities(
    program: MixedProgram,
    rho,
    regime: str = "auto",
    cap: int | None = None,
) -> PartProbabilities:
    """Measure the program with the data register in the mixed state ρ.

    The probability is linear in ρ, so it is evaluated directly on the
    eigendecomposition of ρ without purification.  Outcome j of the N-state
    device is credited to the part owning register j; outcome 0 is the
    inconclusive answer.
    """
    rho = require_density(rho)
    m = program.dim
    if rho.shape != (m, m):
        raise LayoutMismatch(f"data state of shape {rho.shape} does not match dimension {m}")
    n_states = program.total
    if n_states < 2:
        raise WrongRegime(f"the program holds {n_states} pure state(s); need at least 2")
    if regime == "auto":
        regime = "equal" if m == n_states else "universal"
    if regime == "equal":
        if m != n_states:
            raise WrongRegime(f"equal regime needs dim == N, got dim={m}, N={n_states}")
        povm = build_optimal_equal(n_states, cap=cap)
    elif regime == "universal":
        povm = build_universal(m, n_states, cap=cap)
    else:
        raise ValueError(f"unknown regime {regime!r}")

    w, v = np.linalg.eigh(rho)
    outcomes = np.zeros(n_states + 1)
    for weight, column in zip(w, v.T):
        if weight <= 1e-14:
            continue
        full = np.kron(program.vector, column)
        for idx, element in enumerate(povm.elements):
            outcomes[idx] += weight * float((full.conj() @ element @ full).real)

    parts = tuple(
        float(sum(outcomes[r] for r in regs)) for regs in program.part_registers
    )
    return PartProbabilities(
        parts=parts,
        inconclusive=float(outcomes[0]),
        outcome_probs=tuple(float(x) for x in outcomes),
        regime=regime,
    )


@dataclass(frozen=True)
class BoundsReport:
    """Lower/upper envelope on part probabilities for data state index s."""

    data_index: int
    kappa: float  # per-outcome success probability of the device
    lower_bound: float  # on the part matching the data state
    upper_bounds: tuple[float, ...]  # per part
    parts: tuple[float, ...]
    tolerance: float

    @property
    def lower_ok(self) -> bool:
        return self.parts[self.data_index] >= self.lower_bound - self.tolerance

    @property
    def upper_ok(self) -> bool:
        return all(p <= u + self.tolerance for p, u in zip(self.parts, self.upper_bounds))

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    def worst_violation(self) -> float:
        low = self.lower_bound - self.parts[self.data_index]
        highs = [p - u for p, u in zip(self.parts, self.upper_bounds)]
        return max([low] + highs)


def bounds_check(
    program: MixedProgram,
    data_index: int,
    probs: PartProbabilities,
    tol: float = 1e-9,
) -> BoundsReport:
    """Envelope: p_s ≥ Tr(ρ̃_s)·κ and p_i ≤ δ_is Tr(ρ̃_s)·κ + δ_i0 Tr(ρ̃_0)·κ.

    κ is the per-outcome success probability of the device actually used,
    det(X)·N/(N+1)! in the equal regime and det(X)/(N·N!) in the universal
    one, with X the Gram matrix of the N program states.
    """
    n_parts = len(program.part_registers)
    if not 1 <= data_index <= n_parts - 1:
        raise ValueError(f"data index {data_index} outside 1..{n_parts - 1}")
    n_states = program.total
    if probs.regime == "equal":
        kappa = program.det_gram * n_states / math.factorial(n_states + 1)
    else:
        kappa = program.det_gram / (n_states * math.factorial(n_states))
    tr_s = program.part_trace(data_index)
    tr_0 = program.part_trace(0)
    uppers = tuple(
        (tr_s * kappa if i == data_index else 0.0) + (tr_0 * kappa if i == 0 else 0.0)
        for i in range(n_parts)
    )
    return BoundsReport(
        data_index=data_index,
        kappa=kappa,
        lower_bound=tr_s * kappa,
        upper_bounds=uppers,
        parts=probs.parts,
        tolerance=tol,
    )
