import json
import os
import subprocess
import sys

import pytest

# the numpy backend keeps subprocess startup light; behavior is identical
BASE_ENV = {**os.environ, "MODMULT_BACKEND": "numpy"}


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "modmult", *args],
        capture_output=True,
        text=True,
        env=env or BASE_ENV,
    )


class TestEval:
    def test_shear_eta(self):
        proc = run_cli("eval", "-m", "1 1 0 1", "-k", "1", "--family", "eta")
        assert proc.returncode == 0
        assert "exponent 2" in proc.stdout

    def test_identity_theta(self):
        proc = run_cli("eval", "-m", "1 0 0 1", "-k", "5", "--family", "theta")
        assert proc.returncode == 0
        assert "exponent 0" in proc.stdout

    def test_json_format(self):
        proc = run_cli(
            "eval", "-m", "0 -1 1 0", "-k", "1", "--family", "theta",
            "--format", "json",
        )
        data = json.loads(proc.stdout)
        assert data["exponent"] == 18
        assert data["im"] == pytest.approx(-1.0)

    def test_outside_theta_group_exits_3(self):
        proc = run_cli("eval", "-m", "1 1 0 1", "-k", "1", "--family", "theta")
        assert proc.returncode == 3

    def test_malformed_matrix_exits_2(self):
        proc = run_cli("eval", "-m", "1 2 3", "-k", "1", "--family", "eta")
        assert proc.returncode == 2
        proc = run_cli("eval", "-m", "a b c d", "-k", "1", "--family", "eta")
        assert proc.returncode == 2

    def test_bad_determinant_exits_3(self):
        proc = run_cli("eval", "-m", "1 0 0 2", "-k", "1", "--family", "eta")
        assert proc.returncode == 3

    def test_missing_argument_exits_2(self):
        proc = run_cli("eval", "-m", "1 0 0 1", "--family", "eta")
        assert proc.returncode == 2


class TestKernel:
    def test_mod4_class_member(self):
        proc = run_cli("kernel", "-m", "1 2 2 5", "-k", "3", "--family", "eta")
        assert proc.returncode == 0
        assert "formula route): True" in proc.stdout
        assert "classes route): True" in proc.stdout

    def test_shear_not_in_kernel(self):
        proc = run_cli(
            "kernel", "-m", "1 1 0 1", "-k", "6", "--family", "eta",
            "--format", "json",
        )
        data = json.loads(proc.stdout)
        assert data["in_kernel_formula"] is False
        assert data["agree"] is True
        assert data["coset_power"] == 1

    def test_inversion_theta(self):
        proc = run_cli(
            "kernel", "-m", "0 -1 1 0", "-k", "1", "--family", "theta",
            "--format", "json",
        )
        data = json.loads(proc.stdout)
        assert data["in_kernel_formula"] is False
        assert data["coset_representative"] == "0 -1 1 0"


class TestCoset:
    def test_shear_power(self):
        proc = run_cli(
            "coset", "-m", "1 5 0 1", "-k", "1", "--family", "eta",
            "--format", "json",
        )
        data = json.loads(proc.stdout)
        assert data["power"] == 5
        assert data["witness"] == "1 0 0 1"

    def test_negative_identity_theta(self):
        proc = run_cli(
            "coset", "-m", "-1 0 0 -1", "-k", "1", "--family", "theta",
            "--format", "json",
        )
        data = json.loads(proc.stdout)
        assert data["sign"] == -1 and data["power"] == 0


class TestClasses:
    def test_eta_dump(self):
        proc = run_cli("classes", "--family", "eta", "--format", "json")
        data = json.loads(proc.stdout)
        by_case = {entry["case"]: entry for entry in data}
        assert len(by_case["eta:k3"]["constituents"][0]["classes"]) == 12
        assert len(by_case["eta:k4"]["constituents"][0]["classes"]) == 8
        assert by_case["eta:k0"]["constituents"] == []

    def test_restricted_to_one_k(self):
        proc = run_cli("classes", "--family", "theta", "-k", "1", "--format", "json")
        data = json.loads(proc.stdout)
        assert len(data) == 1
        assert data[0]["case"] == "theta:k1"
        assert data[0]["constituents"][0]["classes"] == [
            "1 0 0 1", "1 0 2 1", "1 2 0 1", "1 2 2 1",
        ]

    def test_text_output(self):
        proc = run_cli("classes", "--family", "eta", "-k", "6")
        assert "case eta:k6" in proc.stdout
        assert "0 1 1 1" in proc.stdout


class TestVerify:
    def test_lemma_scope(self):
        proc = run_cli("verify", "--scope", "lemma")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert report["schema"] == 1
        assert report["pass"] is True
        assert report["suites"][0]["case"] == "eta:lemma"

    def test_theta_scope_deterministic(self):
        args = ("verify", "--scope", "theta", "--seed", "5", "--words", "150")
        out1 = run_cli(*args).stdout
        out2 = run_cli(*args).stdout
        assert out1 == out2
        assert json.loads(out1)["pass"] is True

    def test_env_seed_override(self):
        env = {**BASE_ENV, "MODMULT_SEED": "5"}
        by_env = run_cli("verify", "--scope", "theta", "--words", "150", env=env)
        by_flag = run_cli(
            "verify", "--scope", "theta", "--seed", "5", "--words", "150"
        )
        assert by_env.stdout == by_flag.stdout

    def test_out_file(self, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli(
            "verify", "--scope", "lemma", "--out", str(out), "--format", "text"
        )
        assert proc.returncode == 0
        assert "PASS lemma eta:lemma" in proc.stdout
        report = json.loads(out.read_text())
        assert report["pass"] is True

    def test_eta_scope_passes(self):
        proc = run_cli("verify", "--scope", "eta", "--words", "100")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        kinds = {s["kind"] for s in report["suites"]}
        assert kinds == {"case", "cosets"}
        assert len(report["suites"]) == 12

    def test_analytic_scope_passes(self):
        proc = run_cli(
            "verify", "--scope", "analytic", "--seed", "7", "--checks", "25"
        )
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        assert len(report["suites"]) == 4
        assert all(s["pass"] for s in report["suites"])
