"""Mermin-star GHZ contradiction and the spin-1 identities behind Kochen-Specker.

Ten three-qubit Pauli words sit on five edges of four mutually commuting
words each.  Four edges multiply to +I and the all-composite edge to -I, yet
every word lies on two edges, so no assignment of fixed values +/-1 can
reproduce all five parities.  :func:`build_ghz_system` writes this as an
80 x 1024 linear system over the hypothetical joint distribution of the ten
values, and :func:`verify_zero_forcing` shows every atom lands in some row
whose probability is zero.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NonCommutingEdgeError",
    "PauliWord",
    "MerminStar",
    "GhzSystem",
    "CoverageReport",
    "Spin1Triple",
    "build_mermin_star",
    "edge_products",
    "assignment_parity_product",
    "ghz_state",
    "build_ghz_system",
    "verify_zero_forcing",
    "spin1_identities",
]

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class NonCommutingEdgeError(ValueError):
    pass


@dataclass(frozen=True)
class PauliWord:
    """Tensor product of single-qubit Paulis, particle 1 first, e.g. ``"XYY"``."""

    factors: str

    def __post_init__(self):
        if len(self.factors) != 3 or any(f not in _SINGLE for f in self.factors):
            raise ValueError(f"bad Pauli word {self.factors!r}")

    @property
    def matrix(self):
        m = np.ones((1, 1), dtype=complex)
        for f in self.factors:
            m = np.kron(m, _SINGLE[f])
        return m

    @property
    def label(self):
        """``X1`` for single-particle words, the factor string otherwise."""
        active = [(k, f) for k, f in enumerate(self.factors) if f != "I"]
        if len(active) == 1:
            k, f = active[0]
            return f"{f}{k + 1}"
        return self.factors


def _commutator_norm(a, b):
    return float(np.max(np.abs(a @ b - b @ a)))


@dataclass(frozen=True)
class MerminStar:
    words: tuple
    edges: tuple
    horizontal: int

    @property
    def labels(self):
        return tuple(w.label for w in self.words)

    @property
    def matrices(self):
        return [w.matrix for w in self.words]

    def edge_labels(self, e):
        return tuple(self.labels[k] for k in self.edges[e])


_STAR_WORDS = ("XII", "YII", "IXI", "IYI", "IIX", "IIY", "XYY", "YXY", "YYX", "XXX")
# each composite word with its three single-particle factors, then the
# all-composite ("horizontal") edge
_STAR_EDGES = ((0, 3, 5, 6), (1, 2, 5, 7), (1, 3, 4, 8), (0, 2, 4, 9), (6, 7, 8, 9))


def build_mermin_star(tol=1e-12):
    """The ten words and five edges; raises if some edge fails to commute."""
    star = MerminStar(tuple(PauliWord(w) for w in _STAR_WORDS), _STAR_EDGES, 4)
    mats = star.matrices
    for e, edge in enumerate(star.edges):
        for i, j in itertools.combinations(edge, 2):
            if _commutator_norm(mats[i], mats[j]) >= tol:
                raise NonCommutingEdgeError(f"edge {e}: {star.labels[i]} and {star.labels[j]}")
    return star


def edge_products(star: MerminStar, matrices=None, tol=1e-12):
    """Sign ``s_e`` with ``prod(edge e) = s_e I`` for each edge.

    ``matrices`` overrides the word matrices, for checking the parities in
    a rotated basis.
    """
    mats = star.matrices if matrices is None else list(matrices)
    dim = mats[0].shape[0]
    signs = []
    for e, edge in enumerate(star.edges):
        prod = np.eye(dim, dtype=complex)
        for k in edge:
            prod = prod @ mats[k]
        for s in (1, -1):
            if np.max(np.abs(prod - s * np.eye(dim))) < tol:
                signs.append(s)
                break
        else:
            raise ValueError(f"edge {e} product is not +/-I")
    return tuple(signs)


def assignment_parity_product(star: MerminStar, values):
    """Product over edges of the value-products for one +/-1 assignment.

    Every word appears on two edges, so this is +1 for every assignment,
    while the operator parities multiply to -1.
    """
    values = np.asarray(values)
    return int(np.prod([np.prod(values[list(edge)]) for edge in star.edges]))


def ghz_state():
    """``(|000> + |111>)/sqrt(2)``."""
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1 / math.sqrt(2)
    return psi


# -- the 80 x 1024 system ---------------------------------------------------

_PATTERNS = tuple(itertools.product((1, -1), repeat=4))


def assignments(count=10):
    """All +/-1 assignments, shape ``(2**count, count)``; column c has
    value -1 at position k iff bit ``count-1-k`` of c is set."""
    c = np.arange(2**count)[:, None]
    bits = (c >> np.arange(count - 1, -1, -1)[None, :]) & 1
    return 1 - 2 * bits


@dataclass
class GhzSystem:
    """``A p = b`` over the 1024 hypothetical atoms.

    Row ``16 e + r`` is edge ``e`` with sign pattern ``r``.  ``zero_rows``
    are the rows whose joint projector vanishes identically (the value
    pattern breaks the edge parity), so ``b = 0`` there for every state.
    ``state_zero_rows`` also includes rows that vanish only for this state.
    """

    A: np.ndarray
    b: np.ndarray
    zero_rows: np.ndarray
    state_zero_rows: np.ndarray
    row_edge: np.ndarray
    row_pattern: tuple

    def edge_rows(self, e):
        return np.flatnonzero(self.row_edge == e)


def _density(state):
    s = np.asarray(state, dtype=complex)
    if s.ndim == 1:
        if abs(np.vdot(s, s).real - 1.0) > 1e-10:
            raise ValueError("state vector must be normalized")
        return np.outer(s, s.conj())
    if abs(np.trace(s).real - 1.0) > 1e-10:
        raise ValueError("density matrix must have unit trace")
    return s


def build_ghz_system(star: MerminStar, psi=None, tol=1e-12):
    """Assemble the linear system for state ``psi`` (vector or density matrix).

    ``b`` for edge ``e`` and signs ``s`` is ``tr(rho prod_k (I + s_k O_k)/2)``.
    """
    rho = _density(ghz_state() if psi is None else psi)
    mats = star.matrices
    dim = mats[0].shape[0]
    vals = assignments(len(star.words))
    eye = np.eye(dim, dtype=complex)
    rows, b, zero, row_edge, row_pattern = [], [], [], [], []
    for e, edge in enumerate(star.edges):
        for i, j in itertools.combinations(edge, 2):
            if _commutator_norm(mats[i], mats[j]) >= tol:
                raise NonCommutingEdgeError(f"edge {e} does not commute")
        for pattern in _PATTERNS:
            mask = np.all(vals[:, list(edge)] == np.array(pattern), axis=1)
            rows.append(mask.astype(np.int8))
            proj = eye
            for k, s in zip(edge, pattern):
                proj = proj @ (0.5 * (eye + s * mats[k]))
            zero.append(np.max(np.abs(proj)) < tol)
            b.append(float(np.real(np.trace(rho @ proj))))
            row_edge.append(e)
            row_pattern.append(pattern)
    b = np.array(b)
    b[np.abs(b) < tol] = 0.0
    return GhzSystem(
        A=np.array(rows),
        b=b,
        zero_rows=np.flatnonzero(zero),
        state_zero_rows=np.flatnonzero(b == 0.0),
        row_edge=np.array(row_edge),
        row_pattern=tuple(row_pattern),
    )


@dataclass
class CoverageReport:
    covered: np.ndarray
    rows_used: np.ndarray

    @property
    def all_covered(self):
        return bool(np.all(self.covered))

    @property
    def uncovered(self):
        return np.flatnonzero(~self.covered)


def verify_zero_forcing(system: GhzSystem, exclude_edges=(), rows=None):
    """Check that every atom appears in some zero-probability row.

    If so, nonnegativity forces every atom's probability to zero and they
    cannot sum to one.  ``rows`` defaults to the state-independent
    ``zero_rows``; ``exclude_edges`` drops whole edges first.
    """
    rows = system.zero_rows if rows is None else np.asarray(rows)
    keep = ~np.isin(system.row_edge[rows], list(exclude_edges))
    rows = rows[keep]
    covered = np.any(system.A[rows] == 1, axis=0)
    return CoverageReport(covered, rows)


# -- spin 1 ---------------------------------------------------------------


def levi_civita():
    eps = np.zeros((3, 3, 3))
    for (i, j, k), s in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                         ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        eps[i, j, k] = s
    return eps


@dataclass(frozen=True)
class Spin1Triple:
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray

    @classmethod
    def standard(cls):
        """``(s_j)_{kl} = -i eps_{jkl}``."""
        eps = levi_civita()
        return cls(*(-1j * eps[j] for j in range(3)))

    def as_list(self):
        return [self.s1, self.s2, self.s3]


def _random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def spin1_identities(triple: Spin1Triple = None, seed=0, tol=1e-12):
    """Maximum deviation of each spin-1 identity, plus an overall verdict.

    Checked: ``s1^2 + s2^2 + s3^2 = 2I``; ``[s_j, s_k] = i eps_jkl s_l``;
    the squares commute; spectra {-1, 0, 1} and {0, 1}; and the sum of
    squares along a random orthonormal triad is again ``2I``.
    """
    s = (triple or Spin1Triple.standard()).as_list()
    eps = levi_civita()
    eye = np.eye(3)
    dev = {}
    dev["hermitian"] = max(float(np.max(np.abs(m - m.conj().T))) for m in s)
    dev["casimir"] = float(np.max(np.abs(sum(m @ m for m in s) - 2 * eye)))
    dev["commutators"] = max(
        float(np.max(np.abs(s[j] @ s[k] - s[k] @ s[j] - 1j * sum(eps[j, k, l] * s[l] for l in range(3)))))
        for j in range(3) for k in range(3)
    )
    sq = [m @ m for m in s]
    dev["squares_commute"] = max(_commutator_norm(sq[j], sq[k]) for j in range(3) for k in range(3))
    dev["spectrum"] = max(float(np.max(np.abs(np.linalg.eigvalsh(m) - [-1, 0, 1]))) for m in s)
    dev["square_spectrum"] = max(float(np.max(np.abs(np.linalg.eigvalsh(m) - [0, 1, 1]))) for m in sq)
    rot = _random_rotation(np.random.default_rng(seed))
    turned = [sum(rot[c, j] * s[j] for j in range(3)) for c in range(3)]
    dev["rotated_casimir"] = float(np.max(np.abs(sum(m @ m for m in turned) - 2 * eye)))
    return {"deviations": dev, "passed": all(v < tol for v in dev.values())}
