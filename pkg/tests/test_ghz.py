import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bellhv.ghz import (
    NonCommutingEdgeError,
    PauliWord,
    Spin1Triple,
    assignment_parity_product,
    assignments,
    build_ghz_system,
    build_mermin_star,
    edge_products,
    ghz_state,
    levi_civita,
    spin1_identities,
    verify_zero_forcing,
)

EYE8 = np.eye(8)


@pytest.fixture(scope="module")
def star():
    return build_mermin_star()


@pytest.fixture(scope="module")
def system(star):
    return build_ghz_system(star)


def random_unitary(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng):
    v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return v / np.linalg.norm(v)


def test_words_hermitian_and_involutory(star):
    for m in star.matrices:
        assert np.max(np.abs(m - m.conj().T)) < 1e-12
        assert np.max(np.abs(m @ m - EYE8)) < 1e-12
        assert np.allclose(np.linalg.eigvalsh(m), [-1] * 4 + [1] * 4)


def test_star_layout(star):
    assert star.labels == ("X1", "Y1", "X2", "Y2", "X3", "Y3", "XYY", "YXY", "YYX", "XXX")
    assert star.edge_labels(0) == ("X1", "Y2", "Y3", "XYY")
    assert star.edge_labels(star.horizontal) == ("XYY", "YXY", "YYX", "XXX")
    counts = np.bincount(np.concatenate(star.edges), minlength=10)
    assert np.all(counts == 2)


def test_edges_commute_words_do_not(star):
    mats = star.matrices
    for edge in star.edges:
        for i, j in itertools.combinations(edge, 2):
            assert np.max(np.abs(mats[i] @ mats[j] - mats[j] @ mats[i])) < 1e-12
    x1, y1 = mats[0], mats[1]
    assert np.max(np.abs(x1 @ y1 - y1 @ x1)) > 1


def test_edge_products(star):
    assert edge_products(star) == (1, 1, 1, 1, -1)
    assert math.prod(edge_products(star)) == -1
    m = star.matrices
    assert np.allclose(m[6] @ m[7] @ m[8] @ m[9], -EYE8, atol=1e-12)


def test_assignments_cannot_match_parities(star):
    vals = assignments(10)
    products = {assignment_parity_product(star, v) for v in vals}
    assert products == {1}


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_edge_parity_basis_independent(seed):
    star = build_mermin_star()
    u = random_unitary(8, np.random.default_rng(seed))
    turned = [u @ m @ u.conj().T for m in star.matrices]
    assert edge_products(star, turned, tol=1e-10) == (1, 1, 1, 1, -1)


def test_ghz_state_expectations(star):
    psi = ghz_state()
    assert np.linalg.norm(psi) == pytest.approx(1.0)
    mats = star.matrices
    ex = lambda m: float(np.real(np.vdot(psi, m @ psi)))
    assert ex(mats[0]) == pytest.approx(0, abs=1e-15)
    horizontal = [ex(mats[k]) for k in star.edges[star.horizontal]]
    assert horizontal == pytest.approx([-1, -1, -1, 1])
    assert math.prod(round(h) for h in horizontal) == -1


def test_pauli_word_validation():
    with pytest.raises(ValueError):
        PauliWord("XQ")
    assert PauliWord("IZI").label == "Z2"


def test_noncommuting_edge_rejected(star):
    from dataclasses import replace
    bad = replace(star, edges=((0, 1, 2, 3),) + star.edges[1:])
    with pytest.raises(NonCommutingEdgeError):
        build_ghz_system(bad)


def test_system_shape(system):
    assert system.A.shape == (80, 1024)
    assert np.all(system.A.sum(axis=1) == 64)
    assert np.all(system.b >= 0)


def test_rows_match_column_definition(system):
    vals = assignments(10)
    star = build_mermin_star()
    for r in (0, 17, 79):
        edge = star.edges[system.row_edge[r]]
        pattern = np.array(system.row_pattern[r])
        cols = np.flatnonzero(system.A[r])
        assert np.all(vals[cols][:, list(edge)] == pattern)


def test_edge_marginals_sum_to_one(system):
    for e in range(5):
        assert system.b[system.edge_rows(e)].sum() == pytest.approx(1.0, abs=1e-12)


def test_a_priori_zero_rows(system):
    for e in range(5):
        rows = system.edge_rows(e)
        assert np.isin(system.zero_rows, rows).sum() == 8
    # a priori zeros are exactly the parity-violating patterns
    signs = edge_products(build_mermin_star())
    for r in system.zero_rows:
        assert math.prod(system.row_pattern[r]) != signs[system.row_edge[r]]
    assert np.all(system.b[system.zero_rows] == 0)


def test_ghz_state_has_extra_zero_rows(system):
    counts = [np.isin(system.state_zero_rows, system.edge_rows(e)).sum() for e in range(5)]
    assert counts == [12, 12, 12, 12, 15]


def test_generic_state_has_exactly_parity_zeros(star):
    sysr = build_ghz_system(star, random_state(np.random.default_rng(4)))
    for e in range(5):
        assert np.isin(sysr.state_zero_rows, sysr.edge_rows(e)).sum() == 8
    assert np.array_equal(sysr.state_zero_rows, sysr.zero_rows)


def test_rhs_by_product_eigenvectors(system):
    # oracle for a non-horizontal edge: all four words are diagonal in a
    # product basis of single-qubit X/Y eigenvectors
    psi = ghz_state()
    eig = {"X": {1: np.array([1, 1]) / math.sqrt(2), -1: np.array([1, -1]) / math.sqrt(2)},
           "Y": {1: np.array([1, 1j]) / math.sqrt(2), -1: np.array([1, -1j]) / math.sqrt(2)}}
    for r in system.edge_rows(0):
        s1, s2, s3, s4 = system.row_pattern[r]
        if s1 * s2 * s3 != s4:
            continue
        v = np.kron(np.kron(eig["X"][s1], eig["Y"][s2]), eig["Y"][s3])
        assert system.b[r] == pytest.approx(abs(np.vdot(v, psi)) ** 2, abs=1e-12)


def test_density_matrix_input(star):
    rho = np.outer(ghz_state(), ghz_state().conj())
    assert np.allclose(build_ghz_system(star, rho).b, build_ghz_system(star).b)
    mixed = 0.5 * rho + 0.5 * EYE8 / 8
    assert build_ghz_system(star, mixed).b[build_ghz_system(star, mixed).zero_rows].max() == 0


def test_zero_forcing_complete(system):
    rep = verify_zero_forcing(system)
    assert rep.all_covered and rep.uncovered.size == 0
    assert verify_zero_forcing(system, rows=system.state_zero_rows).all_covered


def test_specific_assignment_is_forced(system):
    # X1 = +1, Y2 = +1, Y3 = +1 but XYY = -1
    vals = assignments(10)
    hits = np.flatnonzero((vals[:, 0] == 1) & (vals[:, 3] == 1) & (vals[:, 5] == 1) & (vals[:, 6] == -1))
    row = [r for r in system.edge_rows(0) if system.row_pattern[r] == (1, 1, 1, -1)][0]
    assert row in system.zero_rows
    assert np.all(system.A[row, hits] == 1)


def test_all_edges_needed(system):
    rep = verify_zero_forcing(system, exclude_edges=(4,))
    assert not rep.all_covered
    assert rep.uncovered.size == 64
    # each uncovered atom satisfies all remaining parities
    vals = assignments(10)
    star = build_mermin_star()
    for c in rep.uncovered:
        for edge in star.edges[:4]:
            assert np.prod(vals[c, list(edge)]) == 1


def test_coverage_stable_under_column_permutation(system):
    perm = np.random.default_rng(0).permutation(1024)
    from dataclasses import replace
    shuffled = replace(system, A=system.A[:, perm])
    rep = verify_zero_forcing(shuffled, exclude_edges=(4,))
    base = verify_zero_forcing(system, exclude_edges=(4,))
    assert np.array_equal(rep.covered, base.covered[perm])
    assert verify_zero_forcing(shuffled).all_covered


def test_spin1_identities():
    rep = spin1_identities()
    assert rep["passed"]
    assert all(v < 1e-12 for v in rep["deviations"].values())
    s1, s2, s3 = Spin1Triple.standard().as_list()
    assert np.allclose(s1 @ s2 - s2 @ s1, 1j * s3, atol=1e-12)
    assert np.allclose(s1 @ s1 + s2 @ s2 + s3 @ s3, 2 * np.eye(3), atol=1e-12)


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_spin1_rotated_triads(seed):
    assert spin1_identities(seed=seed)["passed"]


def test_spin1_detects_wrong_matrices():
    s = Spin1Triple.standard()
    bad = Spin1Triple(s.s1, s.s2, 1.01 * s.s3)
    assert not spin1_identities(bad)["passed"]


def test_levi_civita_antisymmetric():
    eps = levi_civita()
    assert eps[0, 1, 2] == 1 and eps[1, 0, 2] == -1
    assert np.allclose(eps, -eps.transpose(1, 0, 2))
