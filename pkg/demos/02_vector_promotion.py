"""
From an lp sparsifier to an lq sparsifier
=========================================

For vectors, sparsity in a weaker norm carries over to a stronger one at a
constant-factor cost. The reverse direction fails badly.
"""

import numpy as np

from schatten_sparsify import INF, extra_budget, min_lp_sparsity, promote_sparsifier
from schatten_sparsify.instances import vector_counterexample

# Four heavy coordinates and two light ones.
x = np.array([1, 1, 1, 1, 0.2, 0.2])
eps = 0.1
print("min l1 sparsity:", min_lp_sparsity(x, eps, 1))
print("min linf sparsity:", min_lp_sparsity(x, eps, INF))

budget = extra_budget(min_lp_sparsity(x, eps, 1), eps, 1, 2)
print(f"extra entries for l2: c = {budget.c_exact:.4f}, rounded up to {budget.c_rounded}")
y = promote_sparsifier(x, eps, 1, 2)
err = np.linalg.norm(x - y) / np.linalg.norm(x)
print(f"promoted vector {y}, relative l2 error {err:.3g}")

# A random heavy-head vector: the promoted support stays within s + e*s.
rng = np.random.default_rng(1)
x = np.concatenate([rng.uniform(1, 5, 40), rng.uniform(0, 1e-3, 2000)])
s = min_lp_sparsity(x, eps, 1)
y = promote_sparsifier(x, eps, 1, INF)
print(f"s = {s}, promoted nnz = {np.count_nonzero(y)}, bound s + ceil(e s) = "
      f"{s + int(np.ceil(np.e * s))}")

# Going from linf down to l2 is not possible with a constant loss.
x = vector_counterexample(4096, 2)
print("spread vector: linf sparsity", min_lp_sparsity(x, eps, INF),
      "vs l2 sparsity", min_lp_sparsity(x, eps, 2))
