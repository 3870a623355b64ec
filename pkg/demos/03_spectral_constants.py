"""Where the coefficients come from: spectra of structured Gram matrices.

The measurement elements are c * (identity on one register) x (antisymmetric
projector on the rest).  The largest admissible c is the reciprocal of the
largest eigenvalue of the Gram matrix of the vectors |k>_i |phi_s>_rest.

Run with: python3 demos/03_spectral_constants.py
"""

import numpy as np

from udisc import (
    build_basis_vectors,
    c_optimal,
    extremal_eigenvalues,
    gamma_block_matrix,
    gram_closed_form,
    gram_numeric,
    lambda_block_matrix,
)

print("== Equal dimension (m = n) ==")
for n in (2, 3, 4):
    summary = extremal_eigenvalues(gram_closed_form(n, n))
    print(f"n={n}: lambda_max = {summary.lambda_max:.10f}  ((n+1)/n = {(n + 1) / n:.10f})"
          f"  ->  c = {c_optimal(n, n):.10f}")

print("\n== Larger dimension (m > n) ==")
print("The Gram matrix splits into blocks; two block families appear:")
for n in (2, 3):
    g_max = float(np.linalg.eigvalsh(gamma_block_matrix(n))[-1])
    l_max = float(np.linalg.eigvalsh(lambda_block_matrix(n))[-1])
    print(f"n={n}: same-tuple block max = {g_max:.10f}  mixed-tuple block max = {l_max:.10f}")

for m, n in ((3, 2), (4, 2), (4, 3)):
    summary = extremal_eigenvalues(gram_numeric(build_basis_vectors(m, n)))
    print(f"m={m}, n={n}: global lambda_max = {summary.lambda_max:.10f}"
          f"  ->  c = {c_optimal(m, n):.10f}  (1/n = {1 / n:.10f})")

print("\n== Closed form vs brute force ==")
for m, n in ((3, 2), (5, 3)):
    gn = gram_numeric(build_basis_vectors(m, n)).matrix
    gc = gram_closed_form(m, n).matrix
    print(f"m={m}, n={n}: size {gn.shape[0]:3d}, "
          f"max entry difference {np.max(np.abs(gn - gc)):.2e}")

print("\nThe coefficient is dimension-independent for m > n: the mixed-tuple")
print("blocks always dominate with largest eigenvalue n, so c = 1/n.")
