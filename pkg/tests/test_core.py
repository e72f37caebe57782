from fractions import Fraction

import numpy as np
import pytest

from structmat import core
from structmat.counterexample import counterexample_matrix
from structmat.exceptions import ArgumentError, SingularMatrixError
from structmat.invertibility import companion_matrix


class TestMinor:
    def test_full_two_by_two(self):
        assert core.minor([[1, 2], [3, 4]], (1, 2), (1, 2)) == -2

    def test_empty_index_sets_give_one(self):
        assert core.minor(np.random.default_rng(0).standard_normal((3, 3)), (), ()) == 1

    def test_single_entry(self):
        assert core.minor([[1, 2], [3, 4]], (1,), (2,)) == 2

    def test_cardinality_mismatch(self):
        with pytest.raises(ArgumentError):
            core.minor([[1, 2], [3, 4]], (1, 2), (1,))

    @pytest.mark.parametrize("rows", [(0,), (3,), (2, 1), (1, 1)])
    def test_bad_index_sets(self, rows):
        with pytest.raises(ArgumentError):
            core.minor([[1, 2], [3, 4]], rows, rows)

    def test_exact_input_stays_exact(self):
        A = [[Fraction(1, 3), 1], [2, Fraction(5, 7)]]
        assert core.minor(A, (1, 2), (1, 2)) == Fraction(5, 21) - 2

    def test_singletons_are_diagonal(self):
        A = np.arange(16.0).reshape(4, 4)
        assert [core.minor(A, (i,), (i,)) for i in range(1, 5)] == list(np.diag(A))


class TestNorms:
    @pytest.mark.parametrize("p", [1, 2, "inf"])
    def test_identity(self, p):
        assert core.p_norm(np.eye(4), p) == pytest.approx(1.0)

    def test_row_sum(self):
        assert core.p_norm([[1, -2], [0, 3]], "inf") == 3

    def test_companion_row_sum_exact(self):
        assert core.p_norm(companion_matrix(3, exact=True), "inf") == Fraction(11, 6)

    def test_two_norm_matches_singular_value(self, rng):
        A = rng.standard_normal((5, 5))
        assert core.p_norm(A, 2) == pytest.approx(np.linalg.svd(A, compute_uv=False)[0], rel=1e-12)

    def test_unsupported_p(self):
        with pytest.raises(ArgumentError):
            core.p_norm(np.eye(2), 3)


class TestSolve:
    def test_identity(self):
        assert np.allclose(core.solve(np.eye(3), [1, 0, 0]), [1, 0, 0])

    def test_diagonal(self):
        assert np.allclose(core.solve([[2, 0], [0, 4]], [2, 4]), [1, 1])

    def test_counterexample_first_column(self):
        A = counterexample_matrix(4, 1, Fraction(1, 2))
        x = core.solve(A, [1, 0, 0, 0])
        assert x[0] == 2            # leading entry s = 1/t of the closed form
        assert list(A.dot(x)) == [1, 0, 0, 0]

    def test_singular_reports_pivot(self):
        with pytest.raises(SingularMatrixError) as info:
            core.solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 0.0])
        assert info.value.pivot == 2

    def test_exact_singular(self):
        with pytest.raises(SingularMatrixError):
            core.inverse([[Fraction(1), 2], [2, 4]])


class TestConstruction:
    def test_rejects_non_square(self):
        with pytest.raises(ArgumentError):
            core.as_matrix([[1, 2, 3], [4, 5, 6]])

    def test_rejects_nonfinite(self):
        with pytest.raises(ArgumentError):
            core.as_matrix([[1.0, np.nan], [0.0, 1.0]])

    def test_integer_input_is_exact(self):
        assert core.is_exact(core.as_matrix([[1, 2], [3, 4]]))
        assert not core.is_exact(core.as_matrix([[1.0, 2], [3, 4]]))

    def test_json_round_trip_exact(self):
        A = core.as_matrix([[Fraction(1, 2), 3], [0, Fraction(-7, 5)]])
        back = core.matrix_from_json(core.matrix_to_json(A))
        assert core.is_exact(back) and (back == A).all()

    def test_json_round_trip_complex(self):
        A = np.array([[1.5, 1j], [0, 2 - 3j]])
        assert np.array_equal(core.matrix_from_json(core.matrix_to_json(A)), A)

    def test_json_order_mismatch(self):
        with pytest.raises(ArgumentError):
            core.matrix_from_json({"order": 3, "entries": [1, 2, 3, 4]})

    def test_save_and_load(self, tmp_path):
        A = core.as_matrix([[1, Fraction(1, 3)], [2, 5]])
        path = tmp_path / "m.json"
        core.save_matrix(A, path)
        assert (core.load_matrix(path) == A).all()
