import json
import subprocess
import sys
from fractions import Fraction

import pytest

from structmat import cli
from structmat.core import matrix_to_json
from structmat.counterexample import counterexample_matrix


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def matrix_file(tmp_path):
    def write(A, name="a.json"):
        path = tmp_path / name
        path.write_text(json.dumps(matrix_to_json(A)))
        return str(path)
    return write


class TestCounterexample:
    def test_first_row_exact(self, capsys):
        out = run_json(capsys, "counterexample", "--n", "4", "--k", "1", "--t", "1/2", "--minors")
        def frac(v):
            return Fraction(v["num"], v["den"])
        assert [frac(v) for v in out["first_row"]] == [1, 0, Fraction(-1, 2), Fraction(-1, 4)]
        assert [frac(v) for v in out["leading_minors"]] == [1, 1, Fraction(1, 2), Fraction(1, 4)]
        assert out["t"] == "1/2"

    def test_least_real_closed_form(self, capsys):
        out = run_json(capsys, "counterexample", "--n", "3", "--k", "1", "--t", "1/2", "--least-real")
        assert out["least_real_eigenvalue"] == pytest.approx(1 - 2 ** (-1 / 3), abs=1e-14)

    def test_limit_spectrum(self, capsys):
        out = run_json(capsys, "counterexample", "--k", "1", "--limit", "--spectrum")
        assert out["order"] == 4 and len(out["eigenvalues"]) == 4

    def test_bad_parameter(self, capsys):
        code, _, err = run(capsys, "counterexample", "--n", "4", "--k", "1", "--t", "3/2")
        assert code == 2 and "structmat: error" in err

    def test_missing_order(self, capsys):
        assert run(capsys, "counterexample", "--k", "1")[0] == 2


class TestClassifyAndSpectrum:
    def test_classes(self, capsys, matrix_file):
        path = matrix_file(counterexample_matrix(6, 1, "1/2"))
        out = run_json(capsys, "classify", "--file", path, "--classes", "P,GKK,tau")
        assert [r["holds"] for r in out["reports"]] == [True, True, True]

    def test_failure_reports_witness(self, capsys, matrix_file):
        out = run_json(capsys, "classify", "--file", matrix_file([[0, 1], [1, 1]]), "--classes", "P")
        assert out["reports"][0]["holds"] is False
        assert out["reports"][0]["witness"]["rows"] == [1]

    def test_unknown_class(self, capsys, matrix_file):
        assert run(capsys, "classify", "--file", matrix_file([[1]]), "--classes", "Q")[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "spectrum", "--file", str(tmp_path / "none.json"))[0] == 2

    def test_spectrum_csv(self, capsys, matrix_file):
        code, out, _ = run(capsys, "spectrum", "--file", matrix_file([[2, 0], [0, 3]]), "--format", "csv")
        assert code == 0 and out.splitlines()[0] == "re,im"

    def test_newton_report(self, capsys, matrix_file):
        out = run_json(capsys, "newton-report", "--file", matrix_file([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
        assert out["violations"] == []


class TestCertificateAndLimits:
    def test_hurwitz_certificate(self, capsys):
        out = run_json(capsys, "hurwitz-cert", "--k", "21")
        assert out["negative"] is True and out["minor_value"] == "-70108852871200"

    def test_negative_point_not_in_limit_set(self, capsys):
        out = run_json(capsys, "toeplitz-limit", "--k", "3", "--t", "1/5")
        assert out["is_member"] is False and out["in_operator_spectrum"] is True
        assert out["lambda"][0] == pytest.approx(-4 / 21)

    def test_star(self, capsys):
        out = run_json(capsys, "toeplitz-limit", "--star", "1,2")
        assert out["rays"] == 3 and out["radius_max"] == pytest.approx(1.8899, abs=1e-4)

    def test_negative_axis_flag(self, capsys):
        out = run_json(capsys, "toeplitz-limit", "--k", "3", "--t", "0.1", "--negative-axis", "--points", "50")
        assert out["points"] == 50 and out["members"] == [] and out["min_gap"] > 0.3

    def test_degenerate_degree_exit_code(self, capsys):
        code, out, _ = run(capsys, "toeplitz-limit", "--k", "3", "--t", "1/5", "--lam", "0")
        assert code == 3 and json.loads(out)["error"] == "DegenerateDegreeError"


class TestSweep:
    def test_files(self, capsys, tmp_path):
        out = run_json(capsys, "sweep", "--k", "3", "--t", "1/5", "--orders", "10,20",
                       "--outdir", str(tmp_path), "--grid-size", "64")
        assert sorted(p.name for p in tmp_path.iterdir()) == ["curve.csv", "spectrum_n10.csv", "spectrum_n20.csv"]
        assert (tmp_path / "curve.csv").read_text().splitlines()[0] == "theta,re,im"
        assert len((tmp_path / "spectrum_n20.csv").read_text().splitlines()) == 21
        assert set(out["median_gap"]) == {"10", "20"}

    def test_byte_stable(self, capsys, tmp_path):
        for d in ("a", "b"):
            run_json(capsys, "sweep", "--k", "2", "--t", "1/3", "--orders", "8,16",
                     "--outdir", str(tmp_path / d), "--grid-size", "32")
        for name in ("curve.csv", "spectrum_n8.csv", "spectrum_n16.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_order_one(self, capsys):
        code, out, _ = run(capsys, "sweep", "--k", "3", "--t", "1/5", "--orders", "1", "--format", "csv")
        assert code == 0 and out == "order,re,im\n1,1.0,0.0\n"

    def test_descending_orders(self, capsys):
        assert run(capsys, "sweep", "--k", "3", "--t", "1/5", "--orders", "20,10")[0] == 2


class TestInvertibilityAndSplines:
    def test_companion_rows(self, capsys):
        out = run_json(capsys, "invertibility", "--family", "companion", "--alpha", "0.5", "--orders", "5,10")
        assert [r["n"] for r in out["rows"]] == [5, 10]

    def test_symbol_product(self, capsys):
        out = run_json(capsys, "invertibility", "--family", "symbol-product", "--c", "3", "--k", "5",
                       "--orders", "20,40")
        assert out["nonzero_diagonals"] == 7 and out["formal_block_one_norm"] == "10"

    def test_mms(self, capsys):
        assert run_json(capsys, "invertibility", "--family", "mms", "--alpha", "0.5", "--n", "10")["holds"]

    def test_spline_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("STRUCTMAT_SEED", "11")
        code, out, _ = run(capsys, "spline", "--k", "2", "--samples", "2", "--n-max", "6", "--format", "csv")
        assert code == 0 and [l.split(",")[0] for l in out.splitlines()[1:]] == ["11", "12"]

    def test_explicit_seed_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("STRUCTMAT_SEED", "11")
        _, out, _ = run(capsys, "spline", "--k", "2", "--samples", "1", "--n-max", "6", "--format", "csv",
                        "--seed", "3")
        assert out.splitlines()[1].startswith("3,")

    def test_bad_environment_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("STRUCTMAT_SEED", "x")
        assert run(capsys, "spline", "--samples", "1")[0] == 2

    def test_knot_file(self, capsys, tmp_path):
        path = tmp_path / "knots.json"
        path.write_text(json.dumps({"knots": [0, 1, 2, 3, 4], "k": 2}))
        out = run_json(capsys, "spline", "--knots", str(path))
        assert out["n"] == 3 and out["inv_norm_inf"] > 1


class TestPlumbing:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_output_file(self, capsys, tmp_path):
        dest = tmp_path / "cert.json"
        code, out, _ = run(capsys, "hurwitz-cert", "--k", "20", "--output", str(dest))
        assert code == 0 and out == ""
        assert json.loads(dest.read_text())["negative"] is False

    def test_console_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "structmat", "hurwitz-cert", "--k", "21"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0 and json.loads(proc.stdout)["negative"] is True
