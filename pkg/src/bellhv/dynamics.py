"""Hidden-variable dynamics for a single spin-1/2.

A particle carries a hidden variable ``lam`` uniform on [-0.5, 0.5].  A
measurement at angle ``theta`` from the polarization splits the interval at
``lambda0 = sin^2(theta/2) - 0.5``: the right part (length ``cos^2(theta/2)``)
reads "up".  The measurement then stretches whichever part was hit back over
the whole interval (the extension map), which keeps the ensemble uniform and
makes repeated measurements chaotic.  A finite relaxation time interpolates
between that instant extension and a static hidden variable.

All functions that take ``lam`` broadcast over numpy arrays.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import hidden_variables
from .spin import Observable, SpinDirection

__all__ = [
    "DegenerateSplitError",
    "SplitPoint",
    "DensityGrid",
    "RelaxationClock",
    "EnsembleConfig",
    "SequenceResult",
    "VonNeumannReport",
    "bell_outcome",
    "geometric_outcome",
    "extension_map",
    "relaxed_lambda",
    "measure_and_collapse",
    "perron_frobenius_step",
    "evolve_density",
    "simulate_sequence",
    "sequence_up_fraction",
    "von_neumann_counterexample",
]


class DegenerateSplitError(ValueError):
    """The split point sits on an end of the interval; one segment is empty."""


def _check_lambda(lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < -0.5) or np.any(lam > 0.5) or np.any(np.isnan(lam)):
        raise ValueError("hidden variable must lie in [-0.5, 0.5]")
    return lam


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0.0) or np.any(theta > math.pi) or np.any(np.isnan(theta)):
        raise ValueError("theta must lie in [0, pi]")
    return theta


def _as_output(x):
    return x.item() if np.ndim(x) == 0 else x


def split_lambda(theta):
    """``sin^2(theta/2) - 0.5`` (broadcasts)."""
    return np.sin(np.asarray(theta, dtype=float) / 2) ** 2 - 0.5


@dataclass(frozen=True)
class SplitPoint:
    lambda0: float
    theta: float

    def __post_init__(self):
        if not -0.5 <= self.lambda0 <= 0.5:
            raise ValueError("lambda0 must lie in [-0.5, 0.5]")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")
        if abs(split_lambda(self.theta) - self.lambda0) > 1e-12:
            raise ValueError("lambda0 inconsistent with theta")

    @classmethod
    def from_angle(cls, theta):
        theta = float(_check_theta(theta))
        return cls(float(split_lambda(theta)), theta)

    @classmethod
    def from_lambda0(cls, lambda0):
        lambda0 = float(lambda0)
        if not -0.5 <= lambda0 <= 0.5:
            raise ValueError("lambda0 must lie in [-0.5, 0.5]")
        theta = 2.0 * math.asin(math.sqrt(lambda0 + 0.5))
        return cls(lambda0, theta)

    @property
    def degenerate(self):
        return self.lambda0 <= -0.5 or self.lambda0 >= 0.5


def _lambda0_of(split):
    if isinstance(split, SplitPoint):
        return split.lambda0
    return float(split)


@dataclass(frozen=True)
class RelaxationClock:
    """Relaxation time ``tau`` (0 and inf allowed) and elapsed time ``t``."""

    tau: float = 0.0
    t: float = math.inf

    def __post_init__(self):
        if not (self.tau >= 0.0 and self.t >= 0.0):
            raise ValueError("tau and t must be nonnegative")

    @property
    def weight(self):
        """Fraction ``1 - exp(-t/tau)`` of the way from lam to lam'."""
        if self.tau == 0.0:
            return 1.0
        if math.isinf(self.tau):
            return 0.0
        return -math.expm1(-self.t / self.tau)

    @classmethod
    def instant(cls):
        return cls(0.0, math.inf)

    @classmethod
    def static(cls):
        return cls(math.inf, 0.0)


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("ensemble size must be a positive integer")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


# -- outcome rules -------------------------------------------------------


def _sign(x):
    # sign(0) = +1
    return np.where(np.asarray(x) >= 0, 1.0, -1.0)


def bell_outcome(obs: Observable, lam):
    """Bell's deterministic value of ``obs`` for polarization +z.

    ``Y(lam) = alpha + |beta| sign(lam |beta| + |beta_z|/2) sign(X)`` where
    ``X`` is the first nonzero of ``beta_z, beta_x, beta_y``.
    """
    obs.require_measurable()
    lam = _check_lambda(lam)
    bx, by, bz = obs.beta
    x = bz if bz != 0 else (bx if bx != 0 else by)
    norm = obs.norm
    y = obs.alpha + norm * _sign(lam * norm + 0.5 * abs(bz)) * _sign(x)
    return _as_output(y)


def geometric_outcome(theta, lam):
    """+1 iff ``lam >= sin^2(theta/2) - 0.5``, else -1.

    The split point itself is assigned to the upper segment.
    """
    theta = _check_theta(theta)
    lam = _check_lambda(lam)
    return _as_output(np.where(lam >= split_lambda(theta), 1, -1))


def _extend(lam, lam0):
    # lam0 strictly inside (-0.5, 0.5); both broadcast
    lower = (lam + 0.5) / (lam0 + 0.5) - 0.5
    upper = 0.5 - (0.5 - lam) / (0.5 - lam0)
    return np.clip(np.where(lam < lam0, lower, upper), -0.5, 0.5)


def extension_map(lam, split):
    """Stretch the segment containing ``lam`` affinely onto [-0.5, 0.5].

    ``split`` is a :class:`SplitPoint` or a bare ``lambda0``.
    """
    lam0 = _lambda0_of(split)
    if not -0.5 < lam0 < 0.5:
        raise DegenerateSplitError("degenerate split: one segment is empty")
    lam = _check_lambda(lam)
    return _as_output(_extend(lam, lam0))


def relaxed_lambda(lam, lam_prime, clock: RelaxationClock):
    """``lam + (lam' - lam)(1 - exp(-t/tau))``; tau=0 gives lam', tau=inf gives lam."""
    lam = _check_lambda(lam)
    lam_prime = _check_lambda(lam_prime)
    w = clock.weight
    if w == 1.0:
        out = np.broadcast_to(lam_prime, np.broadcast(lam, lam_prime).shape).copy()
    elif w == 0.0:
        out = np.broadcast_to(lam, np.broadcast(lam, lam_prime).shape).copy()
    else:
        out = np.clip(lam + (lam_prime - lam) * w, -0.5, 0.5)
    return _as_output(out)


def measure_and_collapse(theta, lam):
    """Outcome of a measurement at ``theta`` and the hidden variable after it.

    For ``theta`` in {0, pi} the outcome is certain and ``lam`` is returned
    unchanged.  Broadcasts over ``theta`` and ``lam``.
    """
    theta = _check_theta(theta)
    lam = _check_lambda(lam)
    lam0 = split_lambda(theta)
    outcome = np.where(lam >= lam0, 1, -1)
    live = (lam0 > -0.5) & (lam0 < 0.5)
    safe0 = np.where(live, lam0, 0.0)
    lam_new = np.where(live, _extend(lam, safe0), lam)
    return _as_output(outcome), _as_output(lam_new)


# -- density evolution ---------------------------------------------------


@dataclass(frozen=True)
class DensityGrid:
    """Density on [-0.5, 0.5] sampled at the centers of ``cell_count`` cells."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.size == 0:
            raise ValueError("density grid needs at least one cell")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("density values must be finite and nonnegative")
        if abs(v.mean() - 1.0) > 1e-9:
            raise ValueError("density must integrate to 1 (mean of values = 1)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def cell_count(self):
        return self.values.size

    @property
    def centers(self):
        return cell_centers(self.cell_count)

    @classmethod
    def uniform(cls, cells=4096):
        return cls(np.ones(cells))

    @classmethod
    def from_profile(cls, f, cells=4096):
        """Sample ``f`` at the cell centers and normalize."""
        v = np.asarray(f(cell_centers(cells)), dtype=float) * np.ones(cells)
        return cls(v / v.mean())

    def sup_deviation(self):
        """``max |rho - 1|``."""
        return float(np.max(np.abs(self.values - 1.0)))


def cell_centers(cells):
    return -0.5 + (np.arange(cells) + 0.5) / cells


def perron_frobenius_step(rho: DensityGrid, split):
    """One measurement's worth of density evolution under the extension map.

    ``rho'(l) = (0.5+l0) rho((0.5+l)(0.5+l0) - 0.5)
              + (0.5-l0) rho(0.5 - (0.5-l)(0.5-l0))``

    Preimage values are read by linear interpolation between cell centers,
    clamped at the ends, and the result is renormalized.
    """
    lam0 = _lambda0_of(split)
    if not -0.5 < lam0 < 0.5:
        raise DegenerateSplitError("degenerate split: one segment is empty")
    x = rho.centers
    v = rho.values
    lo, hi = 0.5 + lam0, 0.5 - lam0
    pre_lo = (0.5 + x) * lo - 0.5
    pre_hi = 0.5 - (0.5 - x) * hi
    out = lo * np.interp(pre_lo, x, v) + hi * np.interp(pre_hi, x, v)
    return DensityGrid(out / out.mean())


def evolve_density(rho: DensityGrid, split, iters):
    """``[rho_0, rho_1, ..., rho_iters]``."""
    if iters < 0:
        raise ValueError("iters must be nonnegative")
    seq = [rho]
    for _ in range(iters):
        seq.append(perron_frobenius_step(seq[-1], split))
    return seq


# -- ensembles -----------------------------------------------------------


@dataclass
class SequenceResult:
    n: int
    up_counts: np.ndarray
    joint_counts: dict = field(default_factory=dict)

    @property
    def up_fractions(self):
        return self.up_counts / self.n

    def merge(self, other):
        """Combine two shards of the same experiment."""
        if len(self.up_counts) != len(other.up_counts):
            raise ValueError("cannot merge sequences of different length")
        joint = dict(self.joint_counts)
        for k, c in other.joint_counts.items():
            joint[k] = joint.get(k, 0) + c
        return SequenceResult(self.n + other.n, self.up_counts + other.up_counts,
                              dict(sorted(joint.items(), reverse=True)))


def _unit_axes(axes):
    out = []
    for a in axes:
        a = np.asarray(a, dtype=float).reshape(-1)
        if a.shape != (3,) or not np.all(np.isfinite(a)) or abs(np.linalg.norm(a) - 1) > 1e-9:
            raise ValueError("measurement axes must be unit 3-vectors")
        out.append(a)
    if not out:
        raise ValueError("at least one measurement axis is required")
    return out


def simulate_sequence(axes, initial, cfg: EnsembleConfig, clock: RelaxationClock,
                      start=0):
    """Measure an ensemble along ``axes`` in turn.

    Each particle starts with polarization ``initial`` and a hidden variable
    drawn from its own substream.  At every step the angle is taken between
    the axis and the particle's current polarization, which afterwards is the
    measured axis signed by the outcome.  An outcome of -1 along ``a`` is
    the outcome +1 along ``-a``, so the hidden variable is re-expressed in
    the flipped frame by ``lam -> -lam``; in between measurements it relaxes
    towards its extended value according to ``clock``.

    ``start`` offsets the particle indices, for running an ensemble in
    shards; see :meth:`SequenceResult.merge`.
    """
    axes = _unit_axes(axes)
    pol0 = initial.n if isinstance(initial, SpinDirection) else SpinDirection(initial).n
    n = cfg.n
    lam = hidden_variables(cfg.seed, n, 1, stream=0, start=start)[:, 0]
    pol = np.tile(pol0, (n, 1))
    code = np.zeros(n, dtype=np.int64)
    up = np.zeros(len(axes), dtype=np.int64)
    for k, a in enumerate(axes):
        theta = np.arccos(np.clip(pol @ a, -1.0, 1.0))
        outcome, lam_ext = measure_and_collapse(theta, lam)
        outcome = np.atleast_1d(outcome)
        carried = np.atleast_1d(relaxed_lambda(lam, lam_ext, clock))
        lam = np.where(outcome > 0, carried, -carried)
        pol = outcome[:, None] * a[None, :]
        up[k] = np.count_nonzero(outcome > 0)
        code = (code << 1) | (outcome < 0)
    steps = len(axes)
    counts = np.bincount(code, minlength=2**steps)
    joint = {}
    for c in np.flatnonzero(counts):
        pattern = tuple(-1 if (c >> (steps - 1 - i)) & 1 else 1 for i in range(steps))
        joint[pattern] = int(counts[c])
    return SequenceResult(n, up, dict(sorted(joint.items(), reverse=True)))


def sequence_up_fraction(clock: RelaxationClock):
    """Expected final up fraction for x-then-z measurements on a +z beam.

    The extension of either x outcome is ``lam' = 2 lam -/+ 0.5``, so after
    partial relaxation with weight ``g`` the up fraction is ``1 / (1 + g)``.
    """
    return 1.0 / (1.0 + clock.weight)


# -- linearity counterexample -------------------------------------------

_SQ2, _SQ3 = math.sqrt(2.0), math.sqrt(3.0)
VN_BETAS = (
    (0.5, 0.0, _SQ3 / 2),
    (_SQ3 / 2, 0.0, 0.5),
    (1 / _SQ2, 0.0, 1 / _SQ2),
)
VN_COEFFICIENT = _SQ2 / (1 + _SQ3)


@dataclass
class VonNeumannReport:
    bell_support: tuple
    combination_support: tuple
    bell_mean: float
    combination_mean: float
    quantum_mean: float = _SQ2 / 2


def von_neumann_counterexample(cfg: EnsembleConfig):
    """Bell's value of ``beta_3 . sigma`` versus the linear combination.

    ``beta_3 = c (beta_1 + beta_2)`` with ``c = sqrt(2)/(1 + sqrt(3))``.
    Bell's model gives the third observable values in {-1, +1}; forcing the
    hidden value to be ``c (Y_1 + Y_2)`` gives three values instead.  Both
    agree on the mean ``sqrt(2)/2``.
    """
    lam = hidden_variables(cfg.seed, cfg.n, 1)[:, 0]
    y1, y2, y3 = (np.atleast_1d(bell_outcome(Observable(0.0, b), lam)) for b in VN_BETAS)
    combo = VN_COEFFICIENT * (y1 + y2)
    # |beta_3| is 1 only to within an ulp; supports are reported at 1e-12
    return VonNeumannReport(
        bell_support=tuple(float(v) for v in np.unique(np.round(y3, 12))),
        combination_support=tuple(float(v) for v in np.unique(np.round(combo, 12))),
        bell_mean=float(y3.mean()),
        combination_mean=float(combo.mean()),
    )
