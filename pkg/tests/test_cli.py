"""CLI behavior: exit codes, JSON shape, determinism."""

import io
import json
from contextlib import redirect_stdout

import pytest

from liecp.catalog import data_text
from liecp.cli import main


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.alg"
    path.write_text(data_text("diamond.alg"))
    return str(path)


@pytest.fixture
def morozov_file(tmp_path):
    path = tmp_path / "morozov6_4.alg"
    path.write_text(data_text("morozov6_4.alg"))
    return str(path)


@pytest.fixture
def h3_file(tmp_path):
    path = tmp_path / "h3.alg"
    path.write_text(data_text("h3.alg"))
    return str(path)


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def run_json(argv):
    code, out = run(argv + ["--json"])
    return code, json.loads(out)


class TestBasicCommands:
    def test_index(self, diamond_file):
        code, payload = run_json(["index", diamond_file])
        assert code == 0 and payload["index"] == 2 and payload["certified"]
        assert payload["schema"] == "liecp/1"

    def test_center(self, diamond_file):
        code, payload = run_json(["center", diamond_file])
        assert code == 0 and payload["center_dim"] == 1 and payload["basis"] == ["z"]

    def test_fsr(self, diamond_file):
        code, payload = run_json(["fsr", diamond_file])
        assert code == 0 and payload["fsr_dim"] == 4 and payload["converged"]

    def test_invariant_form(self, diamond_file, h3_file):
        assert run_json(["invariant-form", diamond_file])[0] == 0
        assert run_json(["invariant-form", h3_file])[0] == 1


class TestCPCommands:
    def test_cp_check_negative(self, diamond_file):
        code, payload = run_json(["cp-check", diamond_file, "--span", "y,z"])
        assert code == 1 and not payload["is_cp"]

    def test_cp_check_positive(self, morozov_file):
        code, payload = run_json(["cp-check", morozov_file, "--span", "e3,e4,e5,e6"])
        assert code == 0 and payload["is_cp"] and payload["is_ideal"]

    def test_cp_find(self, morozov_file, diamond_file):
        code, payload = run_json(["cp-find", morozov_file])
        assert code == 0 and payload["found"] and payload["dim"] == 4
        assert run_json(["cp-find", diamond_file])[0] == 1

    def test_certify_no_cp(self, diamond_file, morozov_file):
        code, payload = run_json(["certify-no-cp", diamond_file])
        assert code == 0 and payload["verified"]
        code, payload = run_json(["certify-no-cp", diamond_file, "--kind", "form"])
        assert code == 0 and payload["certificate"] == "invariant_form_nonabelian"
        assert run_json(["certify-no-cp", morozov_file])[0] == 1

    def test_chain(self, morozov_file, diamond_file):
        code, payload = run_json(
            ["chain", morozov_file, "--levels", "e2,e3,e4,e5,e6;e3,e4,e5,e6"]
        )
        assert code == 0 and payload["indices"] == [2, 3, 4]
        code, payload = run_json(["chain", diamond_file, "--levels", "x,y,z"])
        assert code == 1 and payload["indices"] == [2, 1]

    def test_quotient(self, tmp_path):
        path = tmp_path / "dl.alg"
        path.write_text(data_text("dixmier_lister.alg"))
        code, payload = run_json(["quotient", str(path), "--ideal", "e8", "--f", "e7"])
        assert code == 0
        assert payload["index_parent"] == 2 and payload["index_quotient"] == 1


class TestCatalogCommands:
    def test_list(self):
        code, payload = run_json(["catalog", "list"])
        assert code == 0
        names = [item["name"] for item in payload["entries"]]
        assert "morozov6_4" in names and "diamond" in names

    def test_verify_single(self):
        code, payload = run_json(["catalog", "verify", "morozov6_4"])
        assert code == 0 and payload["reports"][0]["ok"]

    def test_verify_with_param(self):
        code, payload = run_json(["catalog", "verify", "seeley_12457n", "--param", "xi=1"])
        assert code == 0 and payload["reports"][0]["params"]["xi"] == "1"

    def test_verify_unknown(self):
        code, _ = run(["catalog", "verify", "nonsense", "--json"])
        assert code == 2


class TestParabolicCommands:
    def test_parabolic_verify(self):
        code, payload = run_json(
            ["parabolic", "--type", "A", "--composition", "1,1,1,1,1", "--verify"]
        )
        assert code == 0 and payload["computed_index"] == 2 and payload["ok"]

    def test_parabolic_plain(self):
        code, payload = run_json(["parabolic", "--type", "C", "--composition", "1,2,2,1"])
        assert code == 0 and payload["dim_n"] == 8 and payload["formula_index"] == 4

    def test_table1(self):
        code, payload = run_json(["table1", "--type", "C", "--rank", "3"])
        assert code == 0 and payload["index_n"] == 3 and payload["ok"]

    def test_bad_composition(self):
        code, _ = run(["parabolic", "--type", "C", "--composition", "1,2", "--json"])
        assert code == 2


class TestProductFiles:
    def test_frobenius_assoc(self, tmp_path):
        dual = {
            "name": "dual",
            "dim": 2,
            "basis": ["1", "t"],
            "product": [
                {"lhs": "1", "rhs": "1", "terms": {"1": "1"}},
                {"lhs": "1", "rhs": "t", "terms": {"t": "1"}},
                {"lhs": "t", "rhs": "1", "terms": {"t": "1"}},
            ],
            "unit": {"1": "1"},
        }
        path = tmp_path / "dual.alg"
        path.write_text(json.dumps(dual))
        code, payload = run_json(["frobenius-assoc", str(path)])
        assert code == 0 and all(payload["conditions"].values())

    def test_semidirect(self, tmp_path, h3_file):
        two_dim = {
            "name": "aff",
            "dim": 2,
            "basis": ["x", "y"],
            "brackets": [{"lhs": "x", "rhs": "y", "terms": {"y": "1"}}],
        }
        gfile = tmp_path / "aff.alg"
        gfile.write_text(json.dumps(two_dim))
        # adjoint action matrices of the 2-dim nonabelian algebra
        action = {
            "dim_v": 2,
            "matrices": [[["0", "0"], ["0", "1"]], [["0", "0"], ["-1", "0"]]],
        }
        afile = tmp_path / "action.json"
        afile.write_text(json.dumps(action))
        code, payload = run_json(["semidirect", str(gfile), "--action", str(afile)])
        assert code == 0 and all(payload["conditions"].values())


class TestDeterminism:
    def test_byte_identical_json(self, diamond_file):
        for seed in ("0", "1", "2"):
            argv = ["index", diamond_file, "--seed", seed, "--json"]
            _, out1 = run(argv)
            _, out2 = run(argv)
            assert out1 == out2

    def test_conclusions_stable_across_seeds(self, morozov_file):
        results = set()
        for seed in ("0", "1", "2"):
            code, payload = run_json(["cp-check", morozov_file, "--span", "e3,e4,e5,e6", "--seed", seed])
            results.add((code, payload["is_cp"], payload["is_ideal"]))
        assert results == {(0, True, True)}

    def test_human_output(self, diamond_file):
        code, out = run(["index", diamond_file])
        assert code == 0 and "index 2" in out


class TestErrors:
    def test_missing_file(self):
        code, _ = run(["index", "/nonexistent/file.alg", "--json"])
        assert code == 2

    def test_bad_span_label(self, diamond_file):
        code, _ = run(["cp-check", diamond_file, "--span", "nope", "--json"])
        assert code == 2
