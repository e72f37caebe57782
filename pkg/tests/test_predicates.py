from fractions import Fraction

import numpy as np
import pytest

from structmat import predicates as pr
from structmat.core import inverse, minor
from structmat.counterexample import counterexample_matrix, psi_eta_polys
from structmat.exceptions import ArgumentError, CapabilityError
from structmat.invertibility import companion_matrix
from structmat.reports import ClassReport

HALF = Fraction(1, 2)


class TestPMatrix:
    def test_upper_triangular_unit(self):
        assert pr.is_p_matrix([[1, 2], [0, 1]]).holds

    def test_zero_diagonal_witness(self):
        rep = pr.is_p_matrix([[0, 1], [1, 1]])
        assert not rep.holds
        assert rep.witness.rows == (1,) and rep.witness.cols == (1,)

    def test_counterexample_member(self):
        assert pr.is_p_matrix(counterexample_matrix(6, 1, HALF)).holds

    def test_lexicographic_first_witness(self):
        # principal minors {1}, {2}, {3} positive; {1,2} and {2,3} are both negative
        A = [[1, 2, 0], [2, 1, 2], [0, 2, 1]]
        rep = pr.is_p_matrix(A)
        assert rep.witness.rows == (1, 2)
        assert rep.witness.values[0] == minor(A, (1, 2), (1, 2))

    def test_capability_limit(self):
        with pytest.raises(CapabilityError):
            pr.is_p_matrix(np.random.default_rng(1).uniform(0, 1, (17, 17)) + 17 * np.eye(17))

    def test_principal_minors_table(self):
        table = pr.principal_minors([[2, 1], [1, 3]])
        assert table[(1,)] == 2 and table[(2,)] == 3 and table[(1, 2)] == 5


class TestHadamardFisher:
    def test_two_by_two_violation(self):
        rep = pr.hadamard_fisher_check([[1, -2], [1, 1]])
        assert not rep.holds
        assert rep.witness.rows == (1,) and rep.witness.cols == (2,)

    def test_counterexample_holds(self):
        assert pr.hadamard_fisher_check(counterexample_matrix(8, 2, HALF)).holds

    def test_identity(self):
        assert pr.hadamard_fisher_check(np.eye(5)).holds

    def test_gkk_composite(self):
        assert pr.is_gkk(counterexample_matrix(7, 1, HALF)).holds
        assert not pr.is_gkk([[1, -2], [1, 1]]).holds


class TestSignSymmetry:
    def test_positive_definite_is_sign_symmetric(self, rng):
        Q = rng.standard_normal((4, 4))
        assert pr.is_sign_symmetric(Q @ Q.T + np.eye(4)).holds

    def test_weak_violation(self):
        rep = pr.is_weakly_sign_symmetric([[1, -2], [1, 1]])
        assert not rep.holds
        assert rep.witness.values[0] * rep.witness.values[1] == -2

    def test_diagonal_holds_both(self):
        D = np.diag([1, 2, 3])
        assert pr.is_weakly_sign_symmetric(D).holds and pr.is_sign_symmetric(D).holds

    def test_dispersal_zero_always_holds(self, rng):
        assert pr.sign_symmetry_up_to_dispersal(rng.standard_normal((4, 4)), 0).holds

    def test_dispersal_one_on_counterexample(self):
        assert pr.sign_symmetry_up_to_dispersal(counterexample_matrix(6, 1, HALF), 1).holds

    def test_dispersal_capability_guard(self):
        with pytest.raises(CapabilityError):
            pr.sign_symmetry_up_to_dispersal(counterexample_matrix(44, 21, HALF), 1)

    def test_full_check_sees_every_order(self):
        # entries (1,3) and (3,1) have opposite signs; dispersal 0 only sees principal pairs
        A = [[1, 0, 1], [0, 1, 0], [-1, 0, 1]]
        assert not pr.is_sign_symmetric(A).holds
        assert pr.sign_symmetry_up_to_dispersal(A, 0).holds

    def test_negative_dispersal(self):
        with pytest.raises(ArgumentError):
            pr.sign_symmetry_up_to_dispersal(np.eye(2), -1)


class TestTotalPositivity:
    def test_two_by_two_all_classes(self):
        A = [[2, 1], [1, 2]]
        assert pr.is_totally_nonnegative(A).holds
        assert pr.is_totally_positive(A).holds
        assert pr.is_oscillatory(A).holds

    def test_singular_ones(self):
        A = [[1, 1], [1, 1]]
        assert pr.is_totally_nonnegative(A).holds
        rep = pr.is_totally_positive(A)
        assert not rep.holds and rep.witness.rows == (1, 2)

    def test_hurwitz_of_square(self):
        assert pr.is_totally_nonnegative(pr.hurwitz_matrix([1, 2, 1]).matrix).holds

    def test_negative_entry_witness(self):
        rep = pr.is_totally_nonnegative([[1, -1], [0, 1]])
        assert not rep.holds and rep.witness.rows == (1,) and rep.witness.cols == (2,)

    def test_tridiagonal_fast_path_agrees_with_exhaustive(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 8))
            A = np.diag(rng.integers(-1, 4, n)) + np.diag(rng.integers(-1, 3, n - 1), 1) \
                + np.diag(rng.integers(-1, 3, n - 1), -1)
            A = A.tolist()
            fast = pr.is_totally_nonnegative(A)
            dense = [minor(A, r, c) >= 0 for r, c in _all_index_pairs(n)]
            assert fast.holds == all(dense)

    def test_large_tridiagonal_uses_fast_path(self):
        n = 40
        A = 3 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1)
        assert pr.is_tridiagonal(A)
        assert pr.is_oscillatory(A).holds

    def test_identity_not_oscillatory(self):
        rep = pr.is_oscillatory(np.eye(3))
        assert not rep.holds

    def test_singular_not_oscillatory(self):
        assert not pr.is_oscillatory([[1, 1], [1, 1]]).holds

    def test_all_minor_capability(self):
        A = np.ones((15, 15)) + np.eye(15)
        A[0, 5] = 2
        with pytest.raises(CapabilityError):
            pr.is_totally_nonnegative(A)


def _all_index_pairs(n):
    from itertools import combinations

    for m in range(1, n + 1):
        for r in combinations(range(1, n + 1), m):
            for c in combinations(range(1, n + 1), m):
                yield r, c


class TestMMatrix:
    def test_holds(self):
        assert pr.is_m_matrix([[2, -1], [-1, 2]]).holds

    def test_spectral_radius_too_large(self):
        assert not pr.is_m_matrix([[1, -2], [-2, 1]]).holds

    def test_companion_inverse(self):
        assert pr.is_m_matrix(inverse(np.eye(5, dtype=int) + companion_matrix(5, exact=True))).holds

    def test_positive_off_diagonal(self):
        rep = pr.is_m_matrix([[2, 1], [-1, 2]])
        assert not rep.holds and rep.witness.rows == (1,) and rep.witness.cols == (2,)

    def test_complex_rejected(self):
        with pytest.raises(ArgumentError):
            pr.is_m_matrix([[2, 1j], [0, 2]])


class TestUltrametric:
    def test_companion(self):
        C = companion_matrix(4)
        assert pr.is_ultrametric(C).holds
        assert not pr.is_strictly_ultrametric(C).holds

    def test_shifted_companion(self):
        assert pr.is_strictly_ultrametric(0.5 * np.eye(4) + companion_matrix(4)).holds

    def test_diagonal_condition(self):
        assert not pr.is_ultrametric([[1, 2], [2, 1]]).holds

    @pytest.mark.parametrize("n", [1, 2, 7, 25, 50])
    def test_companion_family(self, n):
        assert pr.is_ultrametric(companion_matrix(n)).holds

    @pytest.mark.parametrize("alpha", [1e-3, 0.5, 10.0])
    def test_shift_family(self, alpha):
        assert pr.is_strictly_ultrametric(alpha * np.eye(6) + companion_matrix(6)).holds

    def test_triangle_condition(self):
        A = [[5, 1, 3], [1, 5, 3], [3, 3, 5]]
        rep = pr.is_ultrametric(A)
        assert not rep.holds


class TestDiagonalDominance:
    def test_strict_row(self):
        assert pr.is_diagonally_dominant([[3, -1], [-1, 3]], "row", strict=True).holds

    def test_equality_case(self):
        assert not pr.is_diagonally_dominant([[1, 1], [1, 1]], "row", strict=True).holds
        assert pr.is_diagonally_dominant([[1, 1], [1, 1]], "row", strict=False).holds

    def test_companion_inverse_rows(self):
        B = inverse(np.eye(6, dtype=int) + companion_matrix(6, exact=True))
        assert pr.is_diagonally_dominant(B, "row", strict=True).holds

    def test_column_mode_differs(self):
        A = [[3, 2], [0, 1]]
        assert pr.is_diagonally_dominant(A, "row").holds
        assert not pr.is_diagonally_dominant(A, "column").holds

    def test_bad_mode(self):
        with pytest.raises(ArgumentError):
            pr.is_diagonally_dominant(np.eye(2), "diagonal")


class TestCheckerboard:
    def test_counterexample_inverse(self):
        assert pr.is_checkerboard(inverse(counterexample_matrix(6, 2, HALF))).holds

    def test_ones(self):
        rep = pr.is_checkerboard([[1, 1], [1, 1]])
        assert not rep.holds and rep.witness.rows == (1,) and rep.witness.cols == (2,)

    def test_identity(self):
        assert pr.is_checkerboard(np.eye(4)).holds


class TestHurwitz:
    def test_square(self):
        assert pr.hurwitz_matrix([1, 2, 1]).matrix.tolist() == [[2, 0], [1, 1]]

    def test_cubic(self):
        assert pr.hurwitz_matrix([1, 1, 1, 1]).matrix.tolist() == [[1, 1, 0], [1, 1, 0], [0, 1, 1]]

    def test_eta_21_layout(self):
        _, eta = psi_eta_polys(21)
        H = pr.hurwitz_matrix(eta).matrix
        d = len(eta) - 1
        assert H.shape == (d, d)
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                m = 2 * j - i
                assert H[i - 1, j - 1] == (eta[m] if 0 <= m <= d else 0)
        assert H[0, 0] == eta[1] == 276 and H[1, 0] == 2

    def test_zero_polynomial(self):
        with pytest.raises(ArgumentError):
            pr.hurwitz_matrix([0, 0])

    def test_constant_polynomial(self):
        with pytest.raises(ArgumentError):
            pr.hurwitz_matrix([3])


class TestNewton:
    def test_diagonal(self):
        rep = pr.newton_inequality_report(np.diag([1, 2, 3]))
        assert rep.coefficients == (1, 2, Fraction(11, 3), 6)
        assert [g for _, _, g in rep.rows] == [Fraction(1, 3), Fraction(13, 9)]
        assert rep.violations == ()

    def test_identity_gaps_vanish(self):
        rep = pr.newton_inequality_report(np.eye(3, dtype=int))
        assert all(g == 0 for _, _, g in rep.rows)

    def test_counterexample_report(self):
        rep = pr.newton_inequality_report(counterexample_matrix(10, 3, HALF))
        assert [j for j, _, _ in rep.rows] == list(range(1, 10))
        assert rep.to_json()["violations"] == [j for j, _, _ in rep.violations]


class TestReports:
    def test_json_round_trip(self):
        rep = pr.is_p_matrix([[0, 1], [1, 1]])
        back = ClassReport.from_json(rep.dumps())
        assert back == rep

    def test_witness_iff_failure(self):
        with pytest.raises(ValueError):
            ClassReport("P", True, pr.is_p_matrix([[0]]).witness)

    def test_witness_reproduces_violation(self):
        A = [[1, 3, 0], [1, 1, 0], [0, 0, 1]]
        rep = pr.is_p_matrix(A)
        assert minor(A, rep.witness.rows, rep.witness.cols) == rep.witness.values[0] <= 0
