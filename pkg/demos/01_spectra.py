"""
Singular values and Schatten norms
==================================

Every check in this package rests on a one-sided Jacobi SVD. Here we look at
the building blocks and compare a few norms with their closed forms.
"""

import numpy as np

from schatten_sparsify import (INF, ZERO, all_ones, hadamard, kronecker, schatten_norm,
                               singular_values)

# A Sylvester Hadamard matrix of order 16 satisfies H H^T = 16 I,
# so all of its singular values equal 4.
h = hadamard(4)
print("H16 singular values:", singular_values(h).values[:4], "...")
for p in (1, 2, INF):
    print(f"  S_{p} norm of H16: {schatten_norm(h, p):.12g}")

# The all-ones matrix is rank one: one singular value n, the rest zero.
j = all_ones(8)
print("J8 spectrum:", np.round(singular_values(j).values, 12))
print("J8 rank (Schatten-0):", schatten_norm(j, ZERO))

# Kronecker products multiply spectra pairwise.
k = kronecker(np.diag([2.0, 3.0]), np.diag([5.0, 7.0]))
print("spectrum of diag(2,3) kron diag(5,7):", singular_values(k).values)

# Agreement with LAPACK on a random matrix.
rng = np.random.default_rng(0)
a = rng.standard_normal((40, 25))
ours = singular_values(a).values
ref = np.linalg.svd(a, compute_uv=False)
print(f"max deviation from LAPACK on 40x25: {np.max(np.abs(ours - ref)):.2e}")
