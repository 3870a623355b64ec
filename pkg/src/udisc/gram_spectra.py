"""Structured Gram matrices whose extremal eigenvalues fix the POVM constants.

The vectors |k>_i |φ_ς>_rest (basis level k on register i, an antisymmetric
basis vector on the rest) generate the operator Σ_i B_i used by the POVM
builders; the nonzero spectrum of that operator equals the spectrum of their
Gram matrix G.  G splits into blocks: Γ_ς groups labels with k ∈ ς (largest
eigenvalue (n+1)/n), Λ_ξ groups labels with ξ = {k} ∪ ς an (n+1)-set
(largest eigenvalue n).  The reciprocal of λ_max(G) is the largest
admissible coefficient c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .antisym import antisym_basis_vector, increasing_tuples
from .config import check_entries
from .errors import WrongRegime
from .tensor_algebra import reorder_vector_factors

Label = tuple[int, int, tuple[int, ...]]  # (register i, level k, tuple ς)


@dataclass(frozen=True)
class LabeledVectors:
    m: int
    n: int
    labels: tuple[Label, ...]
    vectors: np.ndarray  # shape (len(labels), m**(n+1))


@dataclass(frozen=True)
class GramStructure:
    """Gram matrix of the labeled basis vectors, in canonical (i, ς, k) order."""

    m: int
    n: int
    labels: tuple[Label, ...]
    matrix: np.ndarray

    def block_partition(self) -> dict[tuple[str, tuple[int, ...]], list[int]]:
        """Label indices grouped into Γ_ς blocks (k ∈ ς) and Λ_ξ blocks (k ∉ ς)."""
        groups: dict[tuple[str, tuple[int, ...]], list[int]] = {}
        for idx, (_, k, s) in enumerate(self.labels):
            if k in s:
                key = ("gamma", s)
            else:
                key = ("lambda", tuple(sorted(s + (k,))))
            groups.setdefault(key, []).append(idx)
        return groups


def _sign(exponent: int) -> float:
    return -1.0 if exponent % 2 else 1.0


def _tuples_for(m: int, n: int) -> list[tuple[int, ...]]:
    if m < n:
        raise WrongRegime(f"no basis family is defined for m={m} < n={n}")
    if m == n:
        return [tuple(range(1, n + 1))]
    return increasing_tuples(m, n)


def _labels_for(m: int, n: int) -> list[Label]:
    # canonical order: lexicographic by (i, ς, k)
    return [
        (i, k, s)
        for i in range(1, n + 1)
        for s in _tuples_for(m, n)
        for k in range(1, m + 1)
    ]


def build_basis_vectors(m: int, n: int, cap: int | None = None) -> LabeledVectors:
    """Unit vectors |k>_i |φ_ς>_rest in dimension m^(n+1), one per label.

    For m = n the single tuple ς = (1..n) is used; for m > n all increasing
    n-tuples appear.
    """
    labels = _labels_for(m, n)
    dim = m ** (n + 1)
    check_entries(dim * len(labels), cap, "labeled vector family")
    dims = [m] * (n + 1)
    eye = np.eye(m, dtype=complex)
    phi = {s: antisym_basis_vector(s, m) for s in _tuples_for(m, n)}
    orders = {}
    for i in range(1, n + 1):
        slot_labels = [i] + [r for r in range(1, n + 2) if r != i]
        orders[i] = [slot_labels.index(j) + 1 for j in range(1, n + 2)]
    vecs = np.empty((len(labels), dim), dtype=complex)
    for row, (i, k, s) in enumerate(labels):
        vecs[row] = reorder_vector_factors(np.kron(eye[k - 1], phi[s]), dims, orders[i])
    return LabeledVectors(m=m, n=n, labels=tuple(labels), vectors=vecs)


def gram_numeric(lv: LabeledVectors) -> GramStructure:
    """Gram matrix from explicit inner products, in label order."""
    g = lv.vectors.conj() @ lv.vectors.T
    return GramStructure(m=lv.m, n=lv.n, labels=lv.labels, matrix=g)


def gram_closed_form(m: int, n: int) -> GramStructure:
    """Gram matrix assembled entrywise from the closed-form rules.

    Same-register labels are orthonormal; across registers the only nonzero
    entries are (-1)^(i-j+1)/n for equal (k, ς) with k ∈ ς, and
    (-1)^(j-i+pos_ξ(k)-pos_ξ(l))/n when {k} ∪ ς and {l} ∪ τ form the same
    (n+1)-tuple ξ.
    """
    labels = _labels_for(m, n)
    size = len(labels)
    g = np.zeros((size, size), dtype=complex)
    for a, (i, k, s) in enumerate(labels):
        for b, (j, l, t) in enumerate(labels):
            if i == j:
                if k == l and s == t:
                    g[a, b] = 1.0
            elif s == t and k == l and k in s:
                g[a, b] = _sign(i - j + 1) / n
            elif k not in s and l not in t and k != l:
                xi = tuple(sorted(s + (k,)))
                if xi == tuple(sorted(t + (l,))):
                    pos_k = xi.index(k) + 1
                    pos_l = xi.index(l) + 1
                    g[a, b] = _sign(j - i + pos_k - pos_l) / n
    return GramStructure(m=m, n=n, labels=tuple(labels), matrix=g)


def gamma_block_matrix(n: int) -> np.ndarray:
    """The n² × n² Γ block: (i, j) sub-block I δ_ij + (-1)^(i-j+1)/n I (i ≠ j)."""
    eye = np.eye(n)
    g = np.zeros((n * n, n * n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            block = eye if i == j else _sign(i - j + 1) / n * eye
            g[(i - 1) * n : i * n, (j - 1) * n : j * n] = block
    return g.astype(complex)


def lambda_block_matrix(n: int) -> np.ndarray:
    """The n(n+1) × n(n+1) Λ block over (register i, position k in ξ).

    Entry ((i,k),(j,l)) = δ_ij δ_kl + (-1)^(i-j+k-l)/n (1-δ_kl)(1-δ_ij).
    """
    width = n + 1
    size = n * width
    g = np.zeros((size, size))
    for i in range(1, n + 1):
        for k in range(1, width + 1):
            for j in range(1, n + 1):
                for l in range(1, width + 1):
                    a = (i - 1) * width + (k - 1)
                    b = (j - 1) * width + (l - 1)
                    if i == j and k == l:
                        g[a, b] = 1.0
                    elif i != j and k != l:
                        g[a, b] = _sign(i - j + k - l) / n
    return g.astype(complex)


@dataclass(frozen=True)
class SpectralSummary:
    lambda_max: float
    block_maxima: dict[tuple[str, tuple[int, ...]], float]

    def max_over(self, kind: str) -> float:
        vals = [v for (k, _), v in self.block_maxima.items() if k == kind]
        if not vals:
            raise KeyError(f"no {kind!r} blocks present")
        return max(vals)


def extremal_eigenvalues(gs: GramStructure) -> SpectralSummary:
    """Largest eigenvalue of the whole Gram matrix and of each Γ/Λ block."""
    lam = float(np.linalg.eigvalsh(gs.matrix)[-1])
    maxima = {}
    for key, idx in gs.block_partition().items():
        sub = gs.matrix[np.ix_(idx, idx)]
        maxima[key] = float(np.linalg.eigvalsh(sub)[-1])
    return SpectralSummary(lambda_max=lam, block_maxima=maxima)


def c_optimal(m: int, n: int, cap: int | None = None) -> float:
    """Largest admissible POVM coefficient, 1/λ_max(G), computed numerically.

    Cross-checked against the closed form n/(n+1) for m = n and 1/n for
    m > n; a disagreement beyond 1e-9 raises ArithmeticError.
    """
    g = gram_numeric(build_basis_vectors(m, n, cap=cap))
    lam = float(np.linalg.eigvalsh(g.matrix)[-1])
    c = 1.0 / lam
    expected = n / (n + 1) if m == n else 1.0 / n
    if abs(c - expected) > 1e-9:
        raise ArithmeticError(
            f"numeric coefficient {c!r} disagrees with the closed form {expected!r}"
        )
    return c
