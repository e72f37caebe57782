from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from structmat import counterexample as cx
from structmat.core import det, minor
from structmat.exceptions import ArgumentError, PoleError
from structmat.spectral import char_poly

HALF = Fraction(1, 2)


class TestEntriesFromMinors:
    def test_all_ones(self):
        assert cx.entries_from_minors([1, 1, 1]) == [1, 0, 0]

    def test_k1_third_entry(self):
        assert cx.entries_from_minors([1, 1, HALF])[2] == -HALF

    def test_k1_first_four(self):
        assert cx.entries_from_minors([1, 1, HALF, Fraction(1, 4)]) == [1, 0, -HALF, -Fraction(1, 4)]

    def test_float_round_trip(self, rng):
        d = list(rng.uniform(0.5, 2.0, 8))
        row = cx.entries_from_minors(d)
        back = cx.ToeplitzHessenberg(tuple(row), 8).leading_minors()
        assert np.allclose(back, d, rtol=1e-12)

    def test_exact_round_trip_through_determinants(self):
        d = [Fraction(3, 2), Fraction(-1, 3), 2, Fraction(5, 7), 1]
        A = cx.ToeplitzHessenberg(tuple(cx.entries_from_minors(d)), 5).to_array()
        assert [minor(A, range(1, m + 1), range(1, m + 1)) for m in range(1, 6)] == d


class TestBuild:
    def test_first_row(self):
        assert cx.build_counterexample(4, 1, HALF).first_row == (1, 0, -HALF, -Fraction(1, 4))

    @pytest.mark.parametrize("k", [1, 2, 4])
    def test_leading_minors_at_order_2k_plus_2(self, k):
        t = Fraction(1, 3)
        got = cx.build_counterexample(2 * k + 2, k, t).leading_minors()
        assert got == [1] * (k + 1) + [t ** j for j in range(1, k + 2)]

    def test_determinant_positive(self):
        for n in range(1, 16):
            for k in (1, 2, 5):
                for t in (Fraction(1, 10), HALF, Fraction(9, 10)):
                    assert det(cx.counterexample_matrix(n, k, t)) > 0

    def test_structure(self):
        A = cx.counterexample_matrix(6, 2, HALF)
        assert all(A[i + 1, i] == 1 for i in range(5))
        assert all(A[i, j] == 0 for i in range(6) for j in range(6) if i > j + 1)
        assert all(A[i, j] == A[0, j - i] for i in range(6) for j in range(i, 6))

    def test_string_parameter_is_exact(self):
        assert (cx.counterexample_matrix(5, 1, "1/2") == cx.counterexample_matrix(5, 1, HALF)).all()

    @pytest.mark.parametrize("t", [0, 1, -0.5, 1.5, "2/3x"])
    def test_bad_parameter(self, t):
        with pytest.raises(ArgumentError):
            cx.build_counterexample(4, 1, t)

    @pytest.mark.parametrize("n,k", [(0, 1), (3, 0), (2.5, 1)])
    def test_bad_sizes(self, n, k):
        with pytest.raises(ArgumentError):
            cx.build_counterexample(n, k, HALF)

    def test_separated_runs_factorize(self):
        A = cx.counterexample_matrix(8, 2, Fraction(1, 3))
        for m in range(1, 9):
            for alpha in combinations(range(1, 9), m):
                runs, start = [], 0
                for i in range(1, len(alpha) + 1):
                    if i == len(alpha) or alpha[i] != alpha[i - 1] + 1:
                        runs.append(alpha[start:i])
                        start = i
                product = Fraction(1)
                for r in runs:
                    product *= minor(A, r, r)
                assert minor(A, alpha, alpha) == product


class TestLimit:
    def test_k1_row(self):
        assert cx.build_limit(1).first_row == (1, 0, -1, -1)

    def test_order_and_first_column(self):
        B = cx.build_limit(4).to_array()
        assert B.shape == (10, 10)
        assert list(B[:, 0]) == [1, 1] + [0] * 8

    def test_continuity_in_t(self):
        for k in (1, 3, 6):
            A = cx.counterexample_matrix(2 * k + 2, k, 1e-6)
            B = cx.build_limit(k).to_array(exact=False)
            assert np.max(np.abs(A - B)) < 1e-5

    def test_spectrum_matches_psi_roots(self):
        # char(B_k)(x) = (x - 1)^(k-1) * psi_k(-x), up to the sign making it monic
        for k in range(1, 9):
            psi, _ = cx.psi_eta_polys(k)
            reflected = [c * (-1) ** (len(psi) - 1 - i) for i, c in enumerate(psi)]
            poly = [Fraction(v) for v in reflected]
            for _ in range(k - 1):
                poly = _times_linear(poly, -1)
            poly = [c / poly[0] for c in poly]
            assert char_poly(cx.build_limit(k).to_array()) == poly


def _times_linear(p, root_neg):
    """Multiply a descending polynomial by ``x + root_neg``."""
    out = p + [Fraction(0)]
    for i in range(1, len(out)):
        out[i] += root_neg * p[i - 1]
    return out


class TestSymbol:
    def test_negative_point(self):
        assert cx.symbol_eval(3, 0.2, -1) == pytest.approx(-0.8 / 4.2, abs=1e-15)
        assert cx.negative_point(3, Fraction(1, 5)) == Fraction(-4, 21)

    def test_exact_at_one(self):
        assert cx.symbol_eval(1, HALF, 1) == Fraction(3, 2)

    def test_pole(self):
        with pytest.raises(PoleError):
            cx.symbol_eval(1, HALF, 0)

    def test_laurent_coefficients_match_first_row(self):
        # s * symbol(s) = 1 + a_0 s + a_1 s^2 + ... about s = 0, sampled on a small circle
        for k, t in ((1, 0.5), (3, 0.2), (5, 0.7)):
            m, rho = 256, 0.5
            s = rho * np.exp(2j * np.pi * np.arange(m) / m)
            vals = np.array([cx.symbol_eval(k, t, z) * z for z in s])
            coeffs = np.fft.fft(vals) / m / rho ** np.arange(m)
            row = cx.build_counterexample(2 * k + 3, k, t).first_row
            assert coeffs[0] == pytest.approx(1.0, abs=1e-12)
            assert np.allclose(coeffs[1: 2 * k + 4], row, atol=1e-9)

    def test_symbol_object_agrees(self):
        sym = cx.counterexample_symbol(4, 0.3)
        for s in (0.5, -1.0, 1j, 2 - 1j):
            assert sym(s) == pytest.approx(cx.symbol_eval(4, 0.3, s), rel=1e-12)


class TestDPolynomials:
    def test_small_orders_at_zero(self):
        for k in (1, 3):
            for j in range(k + 2):
                assert cx.d_poly_eval(k, HALF, j, 0) == 1

    def test_first_nontrivial(self):
        assert cx.d_poly_eval(2, HALF, 4, 0) == HALF

    def test_seed_formula(self):
        for k in (1, 2, 5):
            for lam in (Fraction(1, 3), Fraction(-2), Fraction(5, 4)):
                assert cx.d_poly_eval(k, HALF, k + 2, lam) == (1 - lam) ** (k + 2) - (1 - HALF)

    def test_values_at_zero_positive(self):
        for k in (1, 4):
            for n in range(0, 25):
                assert cx.d_poly_eval(k, Fraction(1, 3), n + 1, 0) == Fraction(1, 3) ** max(n - k, 0)

    def test_matches_determinant(self):
        for k in (1, 2, 4):
            for j in range(1, 21, 3):
                A = cx.counterexample_matrix(j, k, Fraction(2, 5))
                for lam in (Fraction(-1, 2), Fraction(1, 3), Fraction(3, 2)):
                    shifted = A - lam * np.eye(j, dtype=int)
                    assert cx.d_poly_eval(k, Fraction(2, 5), j, lam) == det(shifted)


class TestPsiEta:
    @pytest.mark.parametrize("k", range(1, 12))
    def test_psi_vanishes_at_zero(self, k):
        psi, _ = cx.psi_eta_polys(k)
        assert psi[-1] == 0

    def test_eta_k1(self):
        assert cx.psi_eta_polys(1)[1] == (2, 6, 4, 1)

    @pytest.mark.parametrize("k", [1, 5, 21])
    def test_eta_is_reversal(self, k):
        psi, eta = cx.psi_eta_polys(k)
        assert eta == tuple(reversed(psi))[1:]
        assert eta[0] == 2 and eta[1:] == tuple(comb(k + 3, j) for j in range(2, k + 4))

    def test_psi_definition(self):
        for k in (1, 4):
            psi, _ = cx.psi_eta_polys(k)
            for x in range(-3, 4):
                value = sum(c * x ** (len(psi) - 1 - i) for i, c in enumerate(psi))
                assert value == (1 + x) ** (k + 3) - (k + 1) * (1 + x) + k


class TestCertificate:
    def test_k20_positive(self):
        cert = cx.instability_certificate(20)
        assert not cert.negative and cert.agrees

    def test_k21_negative(self):
        cert = cx.instability_certificate(21)
        assert cert.negative and cert.agrees
        assert cert.minor_value == -70108852871200

    def test_cubic_factor_sign(self):
        assert 3 * 20 ** 3 - 49 * 20 ** 2 - 210 * 20 - 318 == -118
        assert 3 * 21 ** 3 - 49 * 21 ** 2 - 210 * 21 - 318 == 1446

    def test_json(self):
        js = cx.instability_certificate(21).to_json()
        assert js["negative"] is True and js["minor_value"] == js["closed_form_value"]


def test_exponent_inequality_examples():
    # (x+y)_+ + (x+z)_+ <= x_+ + (x+y+z)_+ on an integer grid
    def pos(v):
        return max(v, 0)
    for x in range(-6, 7):
        for y in range(0, 6):
            for z in range(0, 6):
                assert pos(x + y) + pos(x + z) <= pos(x) + pos(x + y + z)
