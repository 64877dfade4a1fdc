import json
import subprocess
import sys

import pytest

from elladic.cli import main
from elladic.measures import bernoulli_measure, tower_to_json


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out.strip()
    return code, json.loads(out)


class TestBasicCommands:
    def test_bernoulli_number(self, capsys):
        code, doc = run_cli(["bernoulli", "--k", "12"], capsys)
        assert code == 0
        assert doc["value"] == "-691/2730"

    def test_bernoulli_poly(self, capsys):
        code, doc = run_cli(["bernoulli", "--k", "2", "--t", "1/3"], capsys)
        assert code == 0 and doc["value"] == "-1/18"

    def test_teichmuller(self, capsys):
        code, doc = run_cli(
            ["teichmuller", "--ell", "5", "--u", "2", "--prec", "2"], capsys
        )
        assert code == 0
        assert doc["value"] == {"ell": 5, "valuation": 0, "unit": 7, "precision": 2}

    def test_teichmuller_domain_error(self, capsys):
        code, doc = run_cli(["teichmuller", "--ell", "5", "--u", "10"], capsys)
        assert code == 1
        assert "not a unit" in doc["error"]

    def test_kl_value(self, capsys):
        code, doc = run_cli(
            ["kl", "--ell", "5", "--beta", "2", "--s", "2", "--c", "2",
             "--level", "6", "--json"],
            capsys,
        )
        assert code == 0
        v = doc["value"]
        assert v["valuation"] == 0
        assert v["unit"] % 25 == 17  # 1/3 mod 25

    def test_kl_interp_method(self, capsys):
        code, doc = run_cli(
            ["kl", "--ell", "5", "--beta", "2", "--s", "1/2", "--method",
             "interp", "--prec", "2"],
            capsys,
        )
        assert code == 0
        assert doc["method"] == "interp" and "value" in doc

    def test_minus_one(self, capsys):
        code, doc = run_cli(
            ["minus-one", "--ell", "5", "--beta", "2", "--s", "2", "--c", "2",
             "--level", "5"],
            capsys,
        )
        assert code == 0
        v = doc["value"]
        # -1/6 is a unit; its residue mod 25 is -(6^-1) = -21 = 4
        assert v["valuation"] == 0 and v["unit"] % 25 == 4

    def test_minus_one_odd_beta_is_domain_error(self, capsys):
        code, doc = run_cli(
            ["minus-one", "--ell", "5", "--beta", "1", "--s", "2"], capsys
        )
        assert code == 1 and "sigma-dependent" in doc["error"]

    def test_hurwitz(self, capsys):
        code, doc = run_cli(
            ["hurwitz", "--ell", "5", "--beta", "2", "--s", "2", "--i", "1",
             "--m", "3"],
            capsys,
        )
        assert code == 0
        v = doc["value"]
        # 1/9 has valuation 0 and unit inverse-of-9
        assert v["valuation"] == 0
        assert v["unit"] * 9 % 5 ** v["precision"] == 1

    def test_dirichlet(self, capsys):
        code, doc = run_cli(
            ["dirichlet", "--ell", "5", "--beta", "1", "--s", "5",
             "--psi", "4:1=1,3=-1"],
            capsys,
        )
        assert code == 0
        v = doc["value"]
        # -1560 = -5 * 312: valuation 1
        assert v["valuation"] == 1
        assert (5 ** v["valuation"] * v["unit"] + 1560) % 5 ** (
            v["valuation"] + v["precision"]
        ) == 0

    def test_zinv_report(self, capsys):
        code, doc = run_cli(
            ["zinv", "--ell", "5", "--beta", "2", "--s", "2", "--primes", "2,3"],
            capsys,
        )
        assert code == 0
        assert doc["sign"] == -1
        assert doc["magnitude_matches"] is True


class TestMeasureCommands:
    @pytest.fixture
    def tower_file(self, tmp_path):
        path = tmp_path / "tower.json"
        path.write_text(json.dumps(tower_to_json(bernoulli_measure(2, 5, 3))))
        return str(path)

    def test_validate(self, tower_file, capsys):
        code, doc = run_cli(["measure", "validate", "--in", tower_file], capsys)
        assert code == 0
        assert doc["valid"] and doc["denom_exponent"] == 0

    def test_validate_rejects_broken(self, tmp_path, capsys):
        doc = tower_to_json(bernoulli_measure(2, 5, 2))
        doc["levels"][1][0] = "7/2"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        code, out = run_cli(["measure", "validate", "--in", str(path)], capsys)
        assert code == 1
        assert "not a distribution" in out["error"]

    def test_pushforward_roundtrip(self, tower_file, tmp_path, capsys):
        out_path = str(tmp_path / "out.json")
        code, doc = run_cli(
            ["measure", "pushforward", "--in", tower_file, "--matrix", "-1",
             "--out", out_path],
            capsys,
        )
        assert code == 0
        assert doc["tower"]["levels"][1] == ["1/2", "1/2", "-1/2", "1/2", "-1/2"]

    def test_integrate(self, tower_file, capsys):
        code, doc = run_cli(
            ["measure", "integrate", "--in", tower_file, "--level", "3",
             "--powers", "1", "--units"],
            capsys,
        )
        assert code == 0
        assert doc["value"]["unit"] % 5 == 1

    def test_transform(self, tower_file, capsys):
        code, doc = run_cli(
            ["measure", "transform", "--in", tower_file, "--kind", "f",
             "--degree", "2"],
            capsys,
        )
        assert code == 0
        assert doc["coeffs"]["0"] == "1/2"


class TestVerify:
    def test_bch_suite(self, capsys):
        code, doc = run_cli(["verify", "bch", "--degree", "6", "--seed", "7"], capsys)
        assert code == 0 and doc["all_pass"]

    def test_gamma_suite(self, capsys):
        code, doc = run_cli(["verify", "gamma", "--degree", "8"], capsys)
        assert code == 0 and doc["all_pass"]

    def test_inversion_suite(self, capsys):
        code, doc = run_cli(["verify", "inversion", "--degree", "6",
                             "--chi", "3", "--t", "1/4"], capsys)
        assert code == 0 and doc["all_pass"]


class TestContract:
    def test_unknown_subcommand_exits_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "elladic.cli", "frobnicate"],
            capture_output=True,
        )
        assert proc.returncode == 2

    def test_unknown_flag_exits_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "elladic.cli", "bernoulli", "--k", "2", "--zzz"],
            capture_output=True,
        )
        assert proc.returncode == 2

    def test_byte_identical_output(self, capsys):
        argv = ["verify", "inversion", "--degree", "5", "--seed", "3"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "elladic.cli", "bernoulli", "--k", "0"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["value"] == "1"
