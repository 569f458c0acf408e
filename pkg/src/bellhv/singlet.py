"""Singlet-state statistics and a contextual hidden-variable model on the unit square.

Alice's and Bob's hidden variables ``(lam1, lam2)`` are uniform on the unit
square.  Alice's sign is fixed by ``lam1`` alone; Bob's answer is the
opposite of Alice's when ``lam2`` clears a threshold that depends on the
angle between the two axes.  The four rectangles have exactly the singlet
probabilities, and because the threshold depends on which of Alice's axes
is in play, the same point of the square can give Bob different answers in
different contexts.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._rng import hidden_variables
from .dynamics import EnsembleConfig, _extend, split_lambda
from .spin import PAULI

__all__ = [
    "MeasurementAxisPair",
    "ChshGeometry",
    "ContextReport",
    "fold_angle",
    "joint_probabilities",
    "marginals",
    "correlation",
    "singlet_state",
    "joint_probabilities_from_state",
    "simulate_singlet",
    "singlet_collapse",
    "chsh_combination",
    "chsh_analytic",
    "chsh_monte_carlo",
    "chsh_correlations_monte_carlo",
    "contextuality_witness",
]


def fold_angle(theta):
    """Map any real angle to [0, pi] with the same cosine.

    Reflex angles such as 5pi/4 give the same sin^2(theta/2) and
    cos^2(theta/2) as their folded partner (3pi/4), so every formula below
    may be fed either.
    """
    return np.arccos(np.clip(np.cos(theta), -1.0, 1.0))


def _unit(v):
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError("measurement axes must be unit 3-vectors")
    return v


@dataclass(frozen=True)
class MeasurementAxisPair:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _unit(self.a))
        object.__setattr__(self, "b", _unit(self.b))

    @property
    def theta(self):
        return float(np.arccos(np.clip(self.a @ self.b, -1.0, 1.0)))


def planar_axis(phi):
    return np.array([math.cos(phi), math.sin(phi), 0.0])


@dataclass(frozen=True)
class ChshGeometry:
    """In-plane angles of Alice's axes a1, a2 and Bob's axes b1, b2."""

    phi_a1: float = 0.0
    phi_a2: float = math.pi / 2
    phi_b1: float = -3 * math.pi / 4
    phi_b2: float = 3 * math.pi / 4

    def __post_init__(self):
        if not all(math.isfinite(p) for p in self.as_tuple()):
            raise ValueError("geometry angles must be finite")

    def as_tuple(self):
        return (self.phi_a1, self.phi_a2, self.phi_b1, self.phi_b2)

    def theta(self, i, j):
        """Angle in [0, pi] between Alice's axis ``i`` and Bob's axis ``j`` (1-based)."""
        pa = (self.phi_a1, self.phi_a2)[i - 1]
        pb = (self.phi_b1, self.phi_b2)[j - 1]
        return float(fold_angle(pa - pb))

    def pair(self, i, j):
        pa = (self.phi_a1, self.phi_a2)[i - 1]
        pb = (self.phi_b1, self.phi_b2)[j - 1]
        return MeasurementAxisPair(planar_axis(pa), planar_axis(pb))


SETTINGS = ((1, 1), (1, 2), (2, 1), (2, 2))


# -- quantum predictions ---------------------------------------------------


def joint_probabilities(theta):
    """``(P(+,-), P(+,+), P(-,+), P(-,-))`` for axes at angle ``theta``."""
    c2 = 0.5 * math.cos(theta / 2) ** 2
    s2 = 0.5 * math.sin(theta / 2) ** 2
    return c2, s2, c2, s2


def marginals(theta):
    """Alice's and Bob's ``(P(+1), P(-1))``; both fair for every angle."""
    pm, pp, mp, mm = joint_probabilities(theta)
    return (pp + pm, mp + mm), (pp + mp, pm + mm)


def correlation(theta):
    """``M(XY) = -cos(theta)``."""
    return -math.cos(theta)


def singlet_state():
    """``(|01> - |10>)/sqrt(2)``."""
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2)


def _projector(axis, sign):
    return 0.5 * (np.eye(2) + sign * sum(c * p for c, p in zip(axis, PAULI)))


def joint_probabilities_from_state(a, b, state=None):
    """Born-rule joint probabilities for axes ``a``, ``b``, same order as
    :func:`joint_probabilities`."""
    psi = singlet_state() if state is None else np.asarray(state, dtype=complex)
    a, b = _unit(a), _unit(b)
    out = []
    for sx, sy in ((1, -1), (1, 1), (-1, 1), (-1, -1)):
        proj = np.kron(_projector(a, sx), _projector(b, sy))
        out.append(float(np.real(np.vdot(psi, proj @ psi))))
    return tuple(out)


# -- hidden-variable model -----------------------------------------------


def _theta_of(pair):
    if isinstance(pair, MeasurementAxisPair):
        return pair.theta
    return float(fold_angle(float(pair)))


def simulate_singlet(pair, lam1, lam2):
    """Deterministic outcomes ``(x, y)`` for hidden variables ``(lam1, lam2)``.

    ``pair`` is a :class:`MeasurementAxisPair` or the angle between the
    axes.  ``x = +1`` iff ``lam1 >= 0``; ``y = -x`` iff
    ``lam2 >= sin^2(theta/2) - 0.5``, otherwise ``y = x``.
    """
    theta = _theta_of(pair)
    lam1 = np.asarray(lam1, dtype=float)
    lam2 = np.asarray(lam2, dtype=float)
    x = np.where(lam1 >= 0, 1, -1)
    y = np.where(lam2 >= split_lambda(theta), -x, x)
    if x.ndim == 0 and y.ndim == 0:
        return int(x), int(y)
    return x, y


def singlet_collapse(pair, lam1, lam2):
    """Outcomes plus the hidden variables after the measurement.

    Each coordinate is stretched over its segment: ``lam1`` about Alice's
    fair split at 0, ``lam2`` about Bob's conditional split.  Degenerate
    splits (theta in {0, pi}) leave ``lam2`` as it was.
    """
    theta = _theta_of(pair)
    x, y = simulate_singlet(theta, lam1, lam2)
    new1 = _extend(np.asarray(lam1, dtype=float), 0.0)
    lam0 = float(split_lambda(theta))
    lam2 = np.asarray(lam2, dtype=float)
    new2 = _extend(lam2, lam0) if -0.5 < lam0 < 0.5 else lam2
    return x, y, new1, new2


def chsh_combination(m11, m12, m21, m22):
    return m11 + m12 + m21 - m22


def chsh_analytic(geom: ChshGeometry = ChshGeometry()):
    """Quantum CHSH value ``M11 + M12 + M21 - M22`` for a planar geometry."""
    return chsh_combination(*(correlation(geom.theta(i, j)) for i, j in SETTINGS))


def chsh_correlations_monte_carlo(geom: ChshGeometry, cfg: EnsembleConfig):
    """Estimated ``(M11, M12, M21, M22)``, each from its own fresh ensemble."""
    out = []
    for k, (i, j) in enumerate(SETTINGS):
        lam = hidden_variables(cfg.seed, cfg.n, 2, stream=k + 1)
        x, y = simulate_singlet(geom.theta(i, j), lam[:, 0], lam[:, 1])
        out.append(float(np.mean(x * y)))
    return tuple(out)


def chsh_monte_carlo(geom: ChshGeometry, cfg: EnsembleConfig):
    """CHSH combination estimated with ``cfg.n`` pairs per setting."""
    return chsh_combination(*chsh_correlations_monte_carlo(geom, cfg))


@dataclass
class ContextReport:
    y2_with_x1: int
    y2_with_x2: int
    threshold_with_x1: float
    threshold_with_x2: float

    @property
    def differs(self):
        return self.y2_with_x1 != self.y2_with_x2


def contextuality_witness(geom: ChshGeometry, lam1, lam2):
    """Bob's ``Y2`` at one point of the square, measured alongside ``X1`` and ``X2``."""
    t12, t22 = geom.theta(1, 2), geom.theta(2, 2)
    _, y_a = simulate_singlet(t12, float(lam1), float(lam2))
    _, y_b = simulate_singlet(t22, float(lam1), float(lam2))
    return ContextReport(y_a, y_b, float(split_lambda(t12)), float(split_lambda(t22)))
