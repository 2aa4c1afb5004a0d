"""
Hard instances for matrix sparsification
========================================

Each family splits A = A' + B. A' is sparse and close to A in S_p. B has the
same S_q norm as A', so dropping B costs a constant factor in S_q.
"""

from schatten_sparsify import build_instance, check_instance, nnz
from schatten_sparsify.spectra import numerical_rank

setups = [(1, 1, 4, 0.1), (2, 4, 2, 0.3), (3, 1, 2, 0.1), (4, 2, 1, 0.4)]
for case, p, q, eps in setups:
    inst = build_instance(case, 8, p, q)
    report = check_instance(inst, eps)
    print(f"case {case} (n={inst.n}, p={inst.p}, q={inst.q}): nnz(A')={nnz(inst.A_prime)}, "
          f"P2 ratio={inst.expected.p2_ratio:.6g}, ||B||_q={inst.expected.q_norm:.6g}, "
          f"checks {'pass' if report.passed else 'FAIL'}")

# The same matrices work for the rank (p = 0).
c1 = build_instance(1, 8, 1, 4)
print("case 1: rank(B) =", numerical_rank(c1.B), " rank(A) =", numerical_rank(c1.A))

# Below the threshold the P2 check is expected to fail, and the report says so.
report = check_instance(build_instance(4, 8, 2, 1), 0.3)
print("case 4 at eps=0.3:", report.warnings[0])
for rec in report.failed():
    print(f"  failed: {rec.name}: {rec.lhs:.6g} vs {rec.rhs:.6g}")
