"""Hypothetical joint distribution P(X1, X2, Y1, Y2) behind four CHSH experiments.

The sixteen atoms are ordered by the signs of ``(X1, X2, Y1, Y2)`` with +1
before -1, most significant first, so atom 1 is (+,+,+,+) and atom 16 is
(-,-,-,-).  Each measurable 2x2 distribution gives four equations, for a
16x16 zero/one system of rank 9.  Its SVD describes every solution; the
minimum-norm one is the regularized solution, and the signed sum ``a . p``
is the same for all of them.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "InconsistentSystemError",
    "ATOMS",
    "CHSH_ANGLES",
    "MATRIX_A",
    "ConstraintSystem",
    "SolutionFamily",
    "build_matrix_A",
    "matrix_A_from_definition",
    "bell_row",
    "build_rhs",
    "svd_solve",
    "sample_solution",
    "bell_invariant",
]

ATOMS = tuple(itertools.product((1, -1), repeat=4))

# the four measured pairs as (index into X1, X2, Y1, Y2)
_PAIRS = ((0, 2), (0, 3), (1, 2), (1, 3))
_CELLS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

CHSH_ANGLES = (5 * math.pi / 4, 3 * math.pi / 4, 3 * math.pi / 4, math.pi / 4)

# fmt: off
MATRIX_A = np.array([
    [1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1],
    [1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1],
], dtype=float)
# fmt: on
MATRIX_A.setflags(write=False)


class InconsistentSystemError(ValueError):
    """The right-hand side has components along zero singular directions.

    ``residuals`` holds those components, ``(U^T b)_i`` for ``i >= rank``.
    """

    def __init__(self, residuals, tol):
        self.residuals = np.asarray(residuals)
        self.tol = tol
        super().__init__(
            f"inconsistent system: max |residual| = {np.max(np.abs(self.residuals)):.3e}"
            f" exceeds {tol:.1e}"
        )


def build_matrix_A():
    """The 16x16 constraint matrix (copy)."""
    return MATRIX_A.copy()


def matrix_A_from_definition():
    """Constraint matrix regenerated from the atom ordering.

    Row ``4*g + c`` selects atoms whose pair ``g`` takes cell ``c``, both in
    the order (X1Y1, X1Y2, X2Y1, X2Y2) x ((+,+), (+,-), (-,+), (-,-)).
    """
    rows = []
    for i, j in _PAIRS:
        for si, sj in _CELLS:
            rows.append([1.0 if (atom[i] == si and atom[j] == sj) else 0.0 for atom in ATOMS])
    return np.array(rows)


def bell_row():
    """``0.5 (X1 Y1 + X1 Y2 + X2 Y1 - X2 Y2)`` evaluated on each atom."""
    return np.array([0.5 * (x1 * y1 + x1 * y2 + x2 * y1 - x2 * y2) for x1, x2, y1, y2 in ATOMS])


def build_rhs(angles=CHSH_ANGLES):
    """Measured singlet probabilities stacked in row order.

    ``angles = (theta11, theta12, theta21, theta22)``.  Each group reads
    ``(s, c, c, s)`` with ``s = sin^2(theta/2)/2`` and ``c = cos^2(theta/2)/2``.
    Reflex angles are fine: sin^2(5pi/8) = sin^2(3pi/8).
    """
    angles = tuple(float(t) for t in angles)
    if len(angles) != 4:
        raise ValueError("need four angles theta11, theta12, theta21, theta22")
    b = []
    for t in angles:
        s = 0.5 * math.sin(t / 2) ** 2
        c = 0.5 * math.cos(t / 2) ** 2
        b.extend((s, c, c, s))
    return np.array(b)


@dataclass(frozen=True)
class ConstraintSystem:
    A: np.ndarray
    b: np.ndarray
    angles: tuple = None

    @classmethod
    def from_angles(cls, angles=CHSH_ANGLES):
        return cls(build_matrix_A(), build_rhs(angles), tuple(angles))

    @classmethod
    def from_rhs(cls, b):
        b = np.asarray(b, dtype=float).reshape(-1)
        if b.shape != (16,) or not np.all(np.isfinite(b)):
            raise ValueError("right-hand side must be 16 finite reals")
        return cls(build_matrix_A(), b)


@dataclass
class SolutionFamily:
    """All solutions ``p_reg + nullspace @ f`` of ``A p = b``."""

    p_reg: np.ndarray
    nullspace: np.ndarray
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray
    rank: int
    residuals: np.ndarray
    residual_ok: bool

    @property
    def factors(self):
        """``f = V^T p_reg``; zero beyond the rank."""
        return self.V.T @ self.p_reg


def svd_solve(system: ConstraintSystem, tol=None, consistency_tol=1e-9, strict=True):
    """Solve ``A p = b`` through ``A = U S V^T``.

    Singular values at or below ``tol`` (default ``1e-10 * S_max``) count
    as zero.  The first ``rank`` factors are ``(U^T b)_i / S_i`` and the rest
    are set to zero, which gives the minimum-norm solution.  The remaining
    components of ``U^T b`` must vanish for the system to be consistent;
    if they exceed ``consistency_tol`` an :class:`InconsistentSystemError`
    is raised, unless ``strict`` is false, in which case they are dropped
    and recorded with ``residual_ok=False``.
    """
    A = np.asarray(system.A, dtype=float)
    b = np.asarray(system.b, dtype=float)
    U, S, Vt = np.linalg.svd(A)
    V = Vt.T
    cutoff = 1e-10 * S[0] if tol is None else tol
    rank = int(np.count_nonzero(S > cutoff))
    ub = U.T @ b
    residuals = ub[rank:]
    ok = bool(np.all(np.abs(residuals) < consistency_tol))
    if strict and not ok:
        raise InconsistentSystemError(residuals, consistency_tol)
    f = np.zeros(A.shape[1])
    f[:rank] = ub[:rank] / S[:rank]
    return SolutionFamily(
        p_reg=V @ f,
        nullspace=V[:, rank:],
        U=U,
        S=S,
        V=V,
        rank=rank,
        residuals=residuals,
        residual_ok=ok,
    )


def sample_solution(family: SolutionFamily, free):
    """``p_reg + nullspace @ free`` for a vector of free factors."""
    free = np.asarray(free, dtype=float).reshape(-1)
    if free.shape != (family.nullspace.shape[1],):
        raise ValueError(f"expected {family.nullspace.shape[1]} free factors")
    return family.p_reg + family.nullspace @ free


def bell_invariant(p):
    """``a . p``; at most 1 in absolute value for any genuine distribution."""
    return float(bell_row() @ np.asarray(p, dtype=float))
