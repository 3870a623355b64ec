"""Dense complex linear algebra substrate.

Tensor products, partial traces, Hermitian spectral decompositions, Gram
matrices, subspace arithmetic and fidelity.  Operators are plain complex
ndarrays; subsystem factors are addressed with 1-based indices throughout
(registers 1..n, data register n+1), and the first tensor factor always owns
the slowest-varying index, matching ``numpy.kron``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .config import HERM_TOL, NULL_TOL, ORTH_TOL, PSD_TOL, SUPPORT_TOL, check_entries
from .errors import IndexOutOfRange, LayoutMismatch, NotHermitian, NotPositive


def max_abs(a: np.ndarray) -> float:
    """Max norm: largest entry magnitude (0 for empty input)."""
    a = np.asarray(a)
    return 0.0 if a.size == 0 else float(np.max(np.abs(a)))


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def as_state_set(states) -> np.ndarray:
    """Coerce to an (n, m) complex array whose rows are state vectors."""
    s = np.asarray(states, dtype=complex)
    if s.ndim != 2:
        raise ValueError(f"expected a set of state vectors, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValueError("state set contains NaN or Inf entries")
    return s


def require_normalized(states, tol: float = 1e-6) -> np.ndarray:
    s = as_state_set(states)
    norms = np.linalg.norm(s, axis=1)
    if np.any(np.abs(norms - 1.0) > tol):
        raise ValueError("state vectors must be normalized")
    return s


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A†)/2."""
    return (a + a.conj().T) / 2


def require_hermitian(a, tol: float = HERM_TOL) -> np.ndarray:
    """Validate A = A† within tol (relative to max(1, ‖A‖_max))."""
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotHermitian(f"matrix of shape {a.shape} is not square")
    dev = max_abs(a - a.conj().T)
    if dev > tol * max(1.0, max_abs(a)):
        raise NotHermitian(f"hermiticity deviation {dev:.3e} exceeds tolerance")
    return a


def kron(a, b, cap: int | None = None) -> np.ndarray:
    """Kronecker product with the first factor owning the slowest-varying index."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    check_entries(a.size * b.size, cap, "kronecker product")
    return np.kron(a, b)


def kron_chain(factors: Iterable[np.ndarray], cap: int | None = None) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of vectors or matrices."""
    mats = [np.asarray(f, dtype=complex) for f in factors]
    if not mats:
        raise ValueError("kron_chain needs at least one factor")
    total = 1
    for f in mats:
        total *= f.size
    check_entries(total, cap, "kronecker chain")
    return reduce(np.kron, mats)


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered factor dimensions of a composite system.

    Factor indices are 1-based: indices 1..n are the program registers and
    index n+1 is the data register.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors or any(int(f) < 1 for f in self.factors):
            raise ValueError(f"invalid factor list {self.factors}")
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))

    @classmethod
    def uniform(cls, m: int, count: int) -> "SubsystemLayout":
        return cls(tuple([int(m)] * int(count)))

    @property
    def dim(self) -> int:
        return math.prod(self.factors)

    @property
    def count(self) -> int:
        return len(self.factors)

    def require_matches(self, op: np.ndarray) -> None:
        if op.shape != (self.dim, self.dim):
            raise LayoutMismatch(
                f"operator of shape {op.shape} does not match layout {self.factors} "
                f"(ambient dimension {self.dim})"
            )


def partial_trace(op, layout: SubsystemLayout, traced) -> np.ndarray:
    """Trace out the given 1-based factor indices.

    The result acts on the remaining factors in their original relative
    order; the total trace is preserved.
    """
    op = require_hermitian(op)
    layout.require_matches(op)
    traced = sorted(set(int(t) for t in traced))
    if not traced:
        raise IndexOutOfRange("traced set must be non-empty")
    if traced[0] < 1 or traced[-1] > layout.count:
        raise IndexOutOfRange(f"traced indices {traced} outside 1..{layout.count}")
    dims = list(layout.factors)
    tensor = op.reshape(*dims, *dims)
    for t in reversed(traced):
        ax = t - 1
        tensor = np.trace(tensor, axis1=ax, axis2=ax + len(dims))
        del dims[ax]
    d = math.prod(dims) if dims else 1
    return tensor.reshape(d, d)


def reorder_factors(op, factors, order) -> np.ndarray:
    """Permute the tensor factors of an operator.

    ``order`` lists 1-based input factor positions; output slot j carries
    input factor order[j].  If op = A_1 ⊗ ... ⊗ A_N the result is
    A_{order[1]} ⊗ ... ⊗ A_{order[N]}.
    """
    op = as_complex_matrix(op)
    dims = [int(f) for f in factors]
    n = len(dims)
    perm = [int(o) - 1 for o in order]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"order {order} is not a permutation of 1..{n}")
    tensor = op.reshape(*dims, *dims)
    tensor = np.transpose(tensor, axes=perm + [n + p for p in perm])
    d = math.prod(dims)
    return tensor.reshape(d, d)


def reorder_vector_factors(vec, factors, order) -> np.ndarray:
    """Permute the tensor factors of a vector (same convention as reorder_factors)."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    dims = [int(f) for f in factors]
    perm = [int(o) - 1 for o in order]
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"order {order} is not a permutation of 1..{len(dims)}")
    return np.transpose(vec.reshape(dims), axes=perm).reshape(-1)


def eig_hermitian(op) -> tuple[np.ndarray, np.ndarray]:
    """Spectral decomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as orthonormal columns)
    with A v_j = w_j v_j.
    """
    op = require_hermitian(op)
    w, v = np.linalg.eigh(op)
    return w, v


def min_eigenvalue(op) -> float:
    return float(np.linalg.eigvalsh(require_hermitian(op))[0])


def gram(states) -> np.ndarray:
    """Gram matrix X with X[i, j] = <s_i|s_j>."""
    s = as_state_set(states)
    return s.conj() @ s.T


def gram_det(states) -> float:
    """Real determinant of the Gram matrix, clamped at 0."""
    d = np.linalg.det(gram(states))
    return max(float(d.real), 0.0)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace given by an orthonormal basis (columns of ``basis``)."""

    ambient_dim: int
    basis: np.ndarray  # shape (ambient_dim, k)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise ValueError(f"basis shape {b.shape} does not match ambient {self.ambient_dim}")
        if b.shape[1]:
            dev = max_abs(b.conj().T @ b - np.eye(b.shape[1]))
            if dev > ORTH_TOL:
                raise ValueError(f"basis is not orthonormal (deviation {dev:.3e})")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def complement_projector(self) -> np.ndarray:
        return np.eye(self.ambient_dim, dtype=complex) - self.projector()

    def contains(self, vec, tol: float = 1e-8) -> bool:
        v = np.asarray(vec, dtype=complex).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise LayoutMismatch("vector dimension does not match ambient dimension")
        residual = v - self.basis @ (self.basis.conj().T @ v)
        return float(np.linalg.norm(residual)) <= tol * max(1.0, float(np.linalg.norm(v)))


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))


def full_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.eye(ambient_dim, dtype=complex))


def _orthonormal_columns(cols: np.ndarray, tol: float = NULL_TOL) -> np.ndarray:
    """Orthonormal basis for the column span, dropping near-dependent directions."""
    if cols.size == 0:
        return np.zeros((cols.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    keep = s > tol * max(1.0, float(s[0]))
    return u[:, keep]


def _null_space(mat: np.ndarray, tol: float = NULL_TOL) -> np.ndarray:
    """Orthonormal basis of the right null space of ``mat``."""
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    rank = int(np.sum(s > tol * max(1.0, smax)))
    return vh[rank:].conj().T


def subspace_from_vectors(vectors, ambient_dim: int | None = None) -> Subspace:
    """Span of a family of (possibly dependent) vectors."""
    v = np.asarray(vectors, dtype=complex)
    if v.ndim == 1:
        v = v[None, :]
    if ambient_dim is None:
        ambient_dim = v.shape[1]
    return Subspace(ambient_dim, _orthonormal_columns(v.T))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Span of the union of two subspaces, via combined orthonormalization."""
    _require_same_ambient(a, b)
    return Subspace(a.ambient_dim, _orthonormal_columns(np.hstack([a.basis, b.basis])))


def subspace_intersection(a: Subspace, b: Subspace, tol: float = NULL_TOL) -> Subspace:
    """Intersection, as the joint null space of the stacked complement projectors."""
    _require_same_ambient(a, b)
    stacked = np.vstack([a.complement_projector(), b.complement_projector()])
    return Subspace(a.ambient_dim, _null_space(stacked, tol))


def subspace_preimage(s: Subspace, mat, tol: float = NULL_TOL) -> Subspace:
    """Preimage {x : M x ∈ S}, computed as the null space of (I - P_S) M."""
    mat = as_complex_matrix(mat)
    if mat.shape[0] != s.ambient_dim:
        raise LayoutMismatch("map dimension does not match subspace ambient dimension")
    return Subspace(mat.shape[1], _null_space((np.eye(s.ambient_dim) - s.projector()) @ mat, tol))


def _require_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise LayoutMismatch(
            f"subspaces live in different ambient dimensions ({a.ambient_dim} vs {b.ambient_dim})"
        )


def support_projector(op, tol: float | None = None) -> Subspace:
    """Support of a PSD operator: span of eigenvectors above tol·max(1, λ_max).

    The zero operator yields the zero subspace.  A negative eigenvalue beyond
    the PSD tolerance raises NotPositive.
    """
    if tol is None:
        tol = SUPPORT_TOL
    op = require_hermitian(op)
    w, v = np.linalg.eigh(op)
    lam_max = max(float(w[-1]), 0.0) if w.size else 0.0
    if w.size and float(w[0]) < -PSD_TOL * max(1.0, lam_max):
        raise NotPositive(f"operator has eigenvalue {float(w[0]):.3e} below -psd_tol")
    keep = w > tol * max(1.0, lam_max)
    return Subspace(op.shape[0], v[:, keep])


# ---------------------------------------------------------------------------
# positive operators


def require_psd(op, tol: float = PSD_TOL) -> np.ndarray:
    op = require_hermitian(op)
    w = np.linalg.eigvalsh(op)
    scale = max(float(w[-1]), 0.0) if w.size else 0.0
    if w.size and float(w[0]) < -tol * max(1.0, scale):
        raise NotPositive(f"operator has eigenvalue {float(w[0]):.3e} below -psd_tol")
    return op


def psd_sqrt(op) -> np.ndarray:
    """Principal square root of a PSD operator (negative noise clipped to 0)."""
    op = require_psd(op)
    w, v = np.linalg.eigh(op)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def fidelity(rho, sigma) -> float:
    """Square-root fidelity F(ρ,σ) = Tr √(√ρ σ √ρ).

    For pure σ = |φ><φ| this satisfies F² = <φ|ρ|φ>.  Both arguments must be
    PSD with trace at most 1 (up to tolerance).
    """
    rho = require_psd(rho)
    sigma = require_psd(sigma)
    if rho.shape != sigma.shape:
        raise LayoutMismatch("fidelity arguments must share a dimension")
    for name, op in (("rho", rho), ("sigma", sigma)):
        tr = float(np.trace(op).real)
        if tr > 1.0 + 1e-9:
            raise ValueError(f"{name} has trace {tr} > 1")
    sr = psd_sqrt(rho)
    inner = hermitize(sr @ sigma @ sr)
    w = np.linalg.eigvalsh(inner)
    # zero out eigensolver noise before the square root amplifies it
    w[w < 1e-13 * max(1.0, float(w[-1]))] = 0.0
    return float(np.sum(np.sqrt(w)))
