"""
Trying to sparsify B
====================

Nothing here proves a lower bound. We run top-k and two sampling schemes on
each B with budgets of 1/16, 1/8 and 1/4 of its support. The relative S_q error
stays far above 0.1 in every case.
"""

import math

from schatten_sparsify import attacks, build_instance

for case, p, q in [(1, 1, 4), (2, 4, 2), (3, 1, 2), (4, 2, 1)]:
    inst = build_instance(case, 8, p, q)
    results = attacks.sweep(inst, attacks.STRATEGIES, [1 / 16, 1 / 8, 1 / 4], [0, 1])
    print(f"case {case}, q={inst.q}")
    for cell in attacks.summarize(results, eps0=inst.eps0)["cells"]:
        print(f"  {cell['strategy']:>8} frac={cell['budget_frac']:.4g} "
              f"error in [{cell['min_rel_error']:.4f}, {cell['max_rel_error']:.4f}]")

# Zeroing half the columns of one replicated Hadamard block costs 1/sqrt(2)
# of that block's spectral norm.
c1 = build_instance(1, 8, 1, 4)
cand = attacks.zero_half_columns(c1.B, c1.groups[0])
err = attacks.block_spectral_errors(c1.B, cand, c1.groups)[0]
print(f"half-columns block error {err:.10f} (1/sqrt(2) = {1 / math.sqrt(2):.10f})")
