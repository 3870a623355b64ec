"""Outcome distributions and reproducible measurement records.

Sampling uses numpy's PCG64 generator seeded directly from the given 64-bit
integer, with one uniform draw per shot mapped through the inverse CDF, so
identical (distribution, shots, seed) yield identical counts on every
platform.  Parallel shot generation, if ever needed, must derive sub-stream
seeds via ``numpy.random.SeedSequence(seed).spawn(k)`` to stay reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discriminator import Povm, ProgramInput
from .errors import LayoutMismatch

CLAMP_TOL = 1e-12
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class OutcomeDistribution:
    labels: tuple[str, ...]
    probabilities: np.ndarray

    @property
    def size(self) -> int:
        return len(self.labels)


def distribution_from_probs(probs, labels=None) -> OutcomeDistribution:
    """Validate, clamp tiny negatives to zero, fold the unit-sum residual into outcome 0."""
    p = np.asarray(probs, dtype=float).copy()
    if np.any(p < -CLAMP_TOL):
        raise ValueError(f"probability {p.min()!r} below the clamping tolerance")
    p[p < 0] = 0.0
    residual = 1.0 - float(p.sum())
    if abs(residual) > RESIDUAL_TOL:
        raise ValueError(f"probabilities sum to {p.sum()!r}, residual exceeds tolerance")
    p[0] += residual
    if p[0] < 0:
        p[0] = 0.0
    if labels is None:
        labels = tuple(str(k) for k in range(len(p)))
    return OutcomeDistribution(labels=tuple(labels), probabilities=p)


def outcome_distribution(povm: Povm, inp) -> OutcomeDistribution:
    """Probabilities Tr(Π_k ρ_in) for a ProgramInput, a state vector or a density matrix."""
    if isinstance(inp, ProgramInput):
        inp = inp.vector
    arr = np.asarray(inp, dtype=complex)
    dim = povm.dim
    if arr.ndim == 1:
        if arr.shape[0] != dim:
            raise LayoutMismatch(f"input vector of length {arr.shape[0]}, POVM dimension {dim}")
        probs = [float((arr.conj() @ e @ arr).real) for e in povm.elements]
    elif arr.ndim == 2:
        if arr.shape != (dim, dim):
            raise LayoutMismatch(f"input matrix of shape {arr.shape}, POVM dimension {dim}")
        probs = [float(np.trace(e @ arr).real) for e in povm.elements]
    else:
        raise ValueError("input must be a vector or a square matrix")
    return distribution_from_probs(probs)


@dataclass(frozen=True)
class SampleRecord:
    seed: int
    shots: int
    counts: tuple[int, ...]
    frequencies: tuple[float, ...]

    def standard_errors(self, dist: OutcomeDistribution) -> tuple[float, ...]:
        p = dist.probabilities
        return tuple(float(np.sqrt(q * (1 - q) / self.shots)) for q in p)


def sample(dist: OutcomeDistribution, shots: int, seed: int) -> SampleRecord:
    """Inverse-CDF sampling with a PCG64 stream; deterministic in (dist, shots, seed)."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    cdf = np.cumsum(dist.probabilities)
    cdf[-1] = 1.0
    draws = rng.random(int(shots))
    idx = np.searchsorted(cdf, draws, side="right")
    counts = np.bincount(idx, minlength=dist.size)
    return SampleRecord(
        seed=int(seed),
        shots=int(shots),
        counts=tuple(int(c) for c in counts),
        frequencies=tuple(float(c) / shots for c in counts),
    )
