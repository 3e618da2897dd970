import doctest

import numpy as np
import pytest

import riccati_foliations.aut_classify as ac
from riccati_foliations.aut_classify import PAPER_TYPE, classify, fixed_angle, fixed_locus
from riccati_foliations.errors import DegenerateMatrix
from riccati_foliations.matrix_core import CASES, ProjMap, projective_distance

from conftest import jordan_matrix, random_case_matrix

E1, E2, E3 = np.eye(3, dtype=complex)
GOLDEN_LAMS = [2.0, 3.0, 5.0]

# expected (points, lines) for each normal form, as exact unit triples
GOLDEN = {
    "I": ([E1, E2, E3], []),
    "II1": ([E3], [E3]),
    "II2": ([E1, E3], []),
    "III2": ([], [E2]),
    "III3": ([E1], []),
}


def _same_set(got, expected, tol):
    if len(got) != len(expected):
        return False
    return all(min(projective_distance(g, e) for g in got) <= tol for e in expected)


def test_doctest_examples():
    assert doctest.testmod(ac).failed == 0


@pytest.mark.parametrize("case", sorted(GOLDEN))
def test_golden_normal_forms(case):
    c = classify(jordan_matrix(case, GOLDEN_LAMS))
    pts, lines = GOLDEN[case]
    assert c.jordan_case == case and c.paper_type == PAPER_TYPE[case]
    fl = c.fixed_locus
    assert not fl.is_all
    assert _same_set(fl.points, pts, 0.0)
    assert _same_set(fl.lines, lines, 0.0)


def test_identity_fixes_everything():
    c = classify(np.eye(3) * (2 - 1j))
    assert c.paper_type == "Identity" and c.fixed_locus.is_all
    assert c.fixed_locus.points == () and c.fixed_locus.lines == ()


def test_paper_type_labels():
    assert PAPER_TYPE == {"I": "P3", "II1": "P1R2", "II2": "P2", "III1": "Identity",
                          "III2": "R2", "III3": "P1"}


@pytest.mark.parametrize("case", CASES)
def test_fixed_locus_is_fixed(case, rng):
    for _ in range(20):
        M, _, _ = random_case_matrix(rng, case)
        fl = fixed_locus(M)
        for p in fl.points:
            assert fixed_angle(M, p) < 1e-9
        for i in range(len(fl.lines)):
            for q in fl.line_points(i, 10):
                assert fixed_angle(M, q) < 1e-9


@pytest.mark.parametrize("case", CASES)
def test_covariance_under_conjugation(case, rng):
    for _ in range(20):
        M, P, J = random_case_matrix(rng, case)
        c = classify(M)
        ref = fixed_locus(J)
        assert c.paper_type == PAPER_TYPE[case]
        # points move by P^{-1}, line covectors by P^T
        assert _same_set(c.fixed_locus.points, [np.linalg.solve(P, p) for p in ref.points], 1e-7)
        assert _same_set(c.fixed_locus.lines, [P.T @ ell for ell in ref.lines], 1e-7)


def test_non_fixed_point_moves():
    assert fixed_angle(np.diag([1, 2, 3]), [1, 1, 1]) > 0.1


def test_normal_form_conjugates_back(rng):
    M, _, _ = random_case_matrix(rng, "II2")
    c = classify(ProjMap(M))
    back = np.linalg.solve(c.conjugator, c.normal_form.matrix @ c.conjugator)
    assert projective_distance(back, M) < 1e-10


def test_singular_raises():
    with pytest.raises(DegenerateMatrix):
        classify(np.array([[1, 2, 3], [2, 4, 6], [0, 0, 1]]))


def test_near_threshold_reported():
    assert classify(np.diag([1, 1 + 1e-3, 2])).near_threshold
    assert not classify(np.diag([1, 2, 3])).near_threshold
