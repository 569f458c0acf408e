"""Exact quantum predictions for spin-1/2 observables ``alpha + beta . sigma``."""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateObservableError",
    "Observable",
    "SpinDirection",
    "eigenvalues",
    "angle_between",
    "outcome_probabilities",
    "expectation",
    "PAULI",
    "operator_matrix",
]

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class DegenerateObservableError(ValueError):
    """Raised when a measurement is asked of a constant observable (beta = 0)."""


def _vector3(v, name):
    v = np.array(v, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite components")
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class Observable:
    """The spin-1/2 observable ``alpha * I + beta . sigma``."""

    alpha: float
    beta: np.ndarray

    def __post_init__(self):
        alpha = float(self.alpha)
        if not np.isfinite(alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", _vector3(self.beta, "beta"))

    @property
    def norm(self):
        return float(np.linalg.norm(self.beta))

    def require_measurable(self):
        if self.norm == 0.0:
            raise DegenerateObservableError("constant observable: beta = 0")


@dataclass(frozen=True)
class SpinDirection:
    """Bloch polarization axis of a pure spin-1/2 state."""

    n: np.ndarray

    def __post_init__(self):
        n = _vector3(self.n, "n")
        if abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise ValueError("polarization axis must be a unit vector")
        object.__setattr__(self, "n", n)


_PLUS_Z = SpinDirection((0.0, 0.0, 1.0))


def _axis(state):
    if state is None:
        return _PLUS_Z.n
    if isinstance(state, SpinDirection):
        return state.n
    return SpinDirection(state).n


def eigenvalues(obs):
    """Return ``(alpha - |beta|, alpha + |beta|)``."""
    obs.require_measurable()
    return obs.alpha - obs.norm, obs.alpha + obs.norm


def angle_between(u, v):
    """Angle in [0, pi] between two nonzero 3-vectors."""
    u = _vector3(u, "u")
    v = _vector3(v, "v")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("angle undefined for a zero vector")
    # clamp absorbs rounding for (anti)parallel vectors
    c = np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0)
    return float(np.arccos(c))


def outcome_probabilities(obs, state=None):
    """Probabilities ``(p_hi, p_lo)`` of the eigenvalues ``alpha +/- |beta|``.

    ``state`` defaults to polarization along +z.  With ``theta`` the angle
    between ``beta`` and the polarization, ``p_hi = cos^2(theta/2)``.
    """
    obs.require_measurable()
    theta = angle_between(obs.beta, _axis(state))
    p_hi = np.cos(theta / 2) ** 2
    return float(p_hi), float(1.0 - p_hi)


def expectation(obs, state=None):
    """Quantum mean ``<psi| alpha + beta.sigma |psi> = alpha + beta . n``."""
    return float(obs.alpha + np.dot(obs.beta, _axis(state)))


def operator_matrix(obs):
    """The 2x2 Hermitian matrix of the observable."""
    b = obs.beta
    return obs.alpha * np.eye(2) + b[0] * PAULI[0] + b[1] * PAULI[1] + b[2] * PAULI[2]
