import math

import numpy as np

from bellhv import singlet
from bellhv.dynamics import EnsembleConfig

geom = singlet.ChshGeometry()
for i, j in singlet.SETTINGS:
    t = geom.theta(i, j)
    print(f"a{i} b{j}: theta={t:.4f}  M={singlet.correlation(t):+.4f}")

print("quantum CHSH:", singlet.chsh_analytic(geom), " 2 sqrt2 =", 2 * math.sqrt(2))

# Fixed +/-1 answers for all four observables at once can only give +/-2.
rng = np.random.default_rng(0)
x1, x2, y1, y2 = rng.choice([-1, 1], size=(4, 8))
print("non-contextual combinations:", x1 * y1 + x1 * y2 + x2 * y1 - x2 * y2)

# The unit-square model: Bob's threshold on lam2 moves with the angle.
cfg = EnsembleConfig(10**6, 0)
print("Monte Carlo CHSH:", singlet.chsh_monte_carlo(geom, cfg))

# Same hidden point, Y2 measured next to X1 or next to X2.
rep = singlet.contextuality_witness(geom, 0.49, -0.05)
print("Y2 with X1:", rep.y2_with_x1, " Y2 with X2:", rep.y2_with_x2)
print("thresholds:", round(rep.threshold_with_x1, 4), round(rep.threshold_with_x2, 4))
