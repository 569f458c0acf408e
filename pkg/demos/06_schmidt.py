import numpy as np

from bellhv import schmidt

for name, state in [
    ("product", schmidt.BipartiteState.product([1, 1j], [0.6, 0.8])),
    ("singlet", schmidt.BipartiteState.singlet()),
    ("3/4 + 1/4", schmidt.BipartiteState(np.diag([np.sqrt(0.75), 0.5]))),
]:
    res = schmidt.schmidt_decompose(state)
    K, info, S = schmidt.entanglement_measures(res)
    print(f"{name:10s} weights={np.round(res.weights, 4)}  K={K:.4f}  I={info:.4f}  S={S:.4f} bits")

# A mixed state is the shadow of a pure state on a bigger system.
rng = np.random.default_rng(2)
g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
rho = g @ g.conj().T
rho /= np.trace(rho).real
psi = schmidt.purify(rho)
back = schmidt.reduced_density(psi).rho
print("purification round trip error:", np.abs(back - rho).max())
print("rho spectrum:", np.round(schmidt.DensityMatrix(rho).spectrum(), 4))
print("Schmidt weights of purification:", np.round(schmidt.schmidt_decompose(psi).weights, 4))
