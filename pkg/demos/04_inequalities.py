"""
Matrix inequalities behind the lower bounds
===========================================

Pinching, block pinching and Rotfeld subadditivity, checked on random inputs,
plus the fact that a spectral approximation is a Schatten approximation.
"""

import numpy as np

from schatten_sparsify import (INF, check_block_pinching, check_pinching, check_rotfeld,
                               check_spectral_to_schatten, make_spectral_approx)
from schatten_sparsify.verify import random_laplacian

rng = np.random.default_rng(2)
a = rng.standard_normal((10, 10))
parts = [np.arange(0, 4), np.arange(4, 10)]
for p in (1, 2, INF):
    rec = check_pinching(a, parts, p)
    print(f"pinching S_{p}: {rec.lhs:.5g} >= {rec.rhs:.5g}")

rec = check_block_pinching(a, [np.arange(0, 5), np.arange(5, 10)], 4)
print(f"block pinching S_4: {rec.lhs:.5g} >= {rec.rhs:.5g}")

b = rng.standard_normal((10, 10))
for p in (0.3, 1.0):
    rec = check_rotfeld(a, b, p)
    print(f"Rotfeld S_{p}: {rec.lhs:.5g} <= {rec.rhs:.5g}")

lap = random_laplacian(64, seed=3)
approx = make_spectral_approx(lap, 0.1, seed=3)
report = check_spectral_to_schatten(lap, approx, 0.1, [1, 2, 3, INF])
for rec in report.checks:
    print(f"{rec.name}: {rec.lhs:.5g} <= {rec.rhs:.5g}")
