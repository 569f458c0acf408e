import math

import numpy as np

from bellhv import dynamics, spin
from bellhv._rng import hidden_variables

# A spin polarized along +z, measured along an axis at angle theta.
# Each particle carries a hidden number lam, uniform on [-0.5, 0.5].
lam = hidden_variables(seed=1, n=10**6)[:, 0]

# The outcome is "up" when lam lands right of sin^2(theta/2) - 0.5,
# so the up fraction is the length of that piece, cos^2(theta/2).
for theta in np.linspace(0, math.pi, 7):
    up = np.mean(dynamics.geometric_outcome(theta, lam) > 0)
    print(f"theta={theta:5.3f}  up={up:.4f}  cos^2(theta/2)={math.cos(theta / 2) ** 2:.4f}")

# Bell's closed-form value for alpha + beta.sigma gives the same statistics.
obs = spin.Observable(1.0, (1.0, 0.0, 1.0))
y = dynamics.bell_outcome(obs, lam)
print("eigenvalues", spin.eigenvalues(obs))
print("mean of Y(lam):", y.mean(), " alpha + beta_z:", 2.0)

# Hidden values need not add up like operators do.
rep = dynamics.von_neumann_counterexample(dynamics.EnsembleConfig(10**6, 0))
print("values of beta3.sigma:", rep.bell_support)
print("values of c(Y1 + Y2): ", np.round(rep.combination_support, 6))
print("means:", round(rep.bell_mean, 4), round(rep.combination_mean, 4), "vs", round(rep.quantum_mean, 4))
