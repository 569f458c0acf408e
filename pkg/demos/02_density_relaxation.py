import numpy as np

from bellhv import dynamics

# Measuring stretches each piece of the interval back over the whole of it.
# For lambda0 = 0 this is the doubling map: nearby points separate fast.
a, b = 0.2, 0.2 + 1e-10
for step in range(8):
    a, b = dynamics.extension_map(a, 0.0), dynamics.extension_map(b, 0.0)
    print(f"step {step + 1}: separation {b - a:.3e}")

# A lopsided density of hidden values is flattened by repeated measurement.
rho = dynamics.DensityGrid.from_profile(lambda x: np.exp(-((x - 0.2) / 0.08) ** 2), 1024)
for k, g in enumerate(dynamics.evolve_density(rho, 0.1, 12)):
    print(f"iteration {k:2d}  sup|rho - 1| = {g.sup_deviation():.3e}")

# The uniform density does not move at all.
flat = dynamics.perron_frobenius_step(dynamics.DensityGrid.uniform(1024), 0.3)
print("uniform after one step:", flat.sup_deviation())

# x then z on a +z beam.  A frozen hidden variable remembers the beam
# (all up); instant extension forgets it (half up).  Relaxation time tau
# interpolates.
x, z = (1.0, 0.0, 0.0), (0.0, 0.0, 1.0)
cfg = dynamics.EnsembleConfig(10**6, 3)
for t in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0):
    clock = dynamics.RelaxationClock(tau=1.0, t=t)
    res = dynamics.simulate_sequence([x, z], z, cfg, clock)
    print(f"t/tau={t:4.2f}  final up={res.up_fractions[-1]:.4f}"
          f"  expected={dynamics.sequence_up_fraction(clock):.4f}")
