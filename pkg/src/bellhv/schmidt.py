"""Schmidt decomposition of bipartite pure states and its entanglement measures."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BipartiteState",
    "SchmidtResult",
    "DensityMatrix",
    "schmidt_decompose",
    "reduced_density",
    "entanglement_measures",
    "purify",
    "separability_check",
]

WEIGHT_CUTOFF = 1e-12


@dataclass(frozen=True)
class BipartiteState:
    """Amplitudes ``coeffs[i, j]`` on the product basis ``|i>|j>``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 2 or 0 in c.shape:
            raise ValueError("coefficients must form a nonempty 2-D matrix")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized (sum |c|^2 = {norm!r})")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def normalized(cls, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        return cls(c / np.linalg.norm(c))

    @classmethod
    def product(cls, u, v):
        return cls.normalized(np.outer(u, v))

    @classmethod
    def singlet(cls):
        s = 1 / np.sqrt(2)
        return cls(np.array([[0, s], [-s, 0]]))


@dataclass(frozen=True)
class SchmidtResult:
    weights: np.ndarray
    modes1: np.ndarray
    modes2: np.ndarray

    @property
    def rank(self):
        return self.weights.size

    def reconstruct(self):
        return (self.modes1 * np.sqrt(self.weights)) @ self.modes2.T


@dataclass(frozen=True)
class DensityMatrix:
    rho: np.ndarray

    def __post_init__(self):
        r = np.array(self.rho, dtype=complex)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(r - r.conj().T)) > 1e-10:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(r).real - 1.0) > 1e-10:
            raise ValueError("density matrix must have unit trace")
        if np.min(np.linalg.eigvalsh(r)) < -1e-12:
            raise ValueError("density matrix must be positive semidefinite")
        r.setflags(write=False)
        object.__setattr__(self, "rho", r)

    @property
    def dim(self):
        return self.rho.shape[0]

    def spectrum(self):
        return np.linalg.eigvalsh(self.rho)[::-1]


def _state(state):
    return state if isinstance(state, BipartiteState) else BipartiteState(state)


def schmidt_decompose(state):
    """Weights (descending, summing to 1) and Schmidt modes of a pure state.

    The weights are the squared singular values of the coefficient matrix;
    those below ``1e-12`` are dropped and the rest renormalized.  Modes are
    columns: ``psi = sum_j sqrt(w_j) modes1[:, j] (x) modes2[:, j]``.
    """
    c = _state(state).coeffs
    u, s, vh = np.linalg.svd(c, full_matrices=False)
    w = s**2
    keep = w > WEIGHT_CUTOFF
    w = w[keep] / np.sum(w[keep])
    return SchmidtResult(w, u[:, keep], vh[keep].T)


def reduced_density(state, which=1):
    """Partial trace over the other subsystem: ``C C^+`` or ``C^T C^*``."""
    c = _state(state).coeffs
    if which == 1:
        rho = c @ c.conj().T
    elif which == 2:
        rho = c.T @ c.conj()
    else:
        raise ValueError("which must be 1 or 2")
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def entanglement_measures(result: SchmidtResult):
    """Schmidt number ``K``, Schmidt information ``I`` and entropy ``S``.

    ``K = 1 / sum w^2``, ``I = log2 K``, ``S = -sum w log2 w``; both
    logarithms in bits.
    """
    w = np.asarray(result.weights, dtype=float)
    w = w[w > 0]
    K = 1.0 / float(np.sum(w**2))
    S = float(-np.sum(w * np.log2(w)))
    return K, float(np.log2(K)), S + 0.0


def purify(rho):
    """A pure state on ``d x r`` whose first reduced density is ``rho``.

    The ancilla modes are the canonical basis of the r-dimensional second
    factor, where r is the rank of ``rho``.
    """
    dm = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    evals, evecs = np.linalg.eigh(dm.rho)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    keep = evals > WEIGHT_CUTOFF
    w = evals[keep] / np.sum(evals[keep])
    return BipartiteState(evecs[:, keep] * np.sqrt(w))


def separability_check(state, tol=1e-10):
    """True iff the largest Schmidt weight exceeds ``1 - tol``."""
    return bool(schmidt_decompose(state).weights[0] > 1.0 - tol)
