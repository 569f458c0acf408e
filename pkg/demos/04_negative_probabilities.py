import numpy as np

from bellhv import reconstruction as rc

# Suppose one joint distribution P(X1, X2, Y1, Y2) sat behind all four
# singlet experiments.  Each experiment pins four sums of its 16 atoms.
system = rc.ConstraintSystem.from_angles()
fam = rc.svd_solve(system)
print("rank:", fam.rank)
print("singular values:", np.round(fam.S, 6))
print("consistency residuals:", np.abs(fam.residuals).max())

np.set_printoptions(precision=5, suppress=True)
print("minimum-norm solution:")
print(fam.p_reg)
print("sum:", fam.p_reg.sum(), " a.p:", rc.bell_invariant(fam.p_reg))

# Every other solution differs by a null vector, and a.p never moves.
rng = np.random.default_rng(1)
for _ in range(5):
    p = rc.sample_solution(fam, rng.normal(size=7))
    print(f"a.p={rc.bell_invariant(p):.12f}  min p={p.min():+.4f}  sum p^2={p @ p:.4f}")

# A genuine distribution cannot exceed 1.
p = rng.dirichlet(np.ones(16))
print("random genuine distribution, a.p =", rc.bell_invariant(p))
