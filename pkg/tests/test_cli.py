"""
Tests for cli.py: commands, exit codes and the JSON report on stdout.
"""
import json

import pytest

from cli import main, normalize_argv
from config import SEED_ENV_VAR
from serialization import dump_json, space_to_dict


@pytest.fixture(autouse=True)
def isolated_run(tmp_path, monkeypatch):
    """No stray configuration file or seed from the environment."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)


def run_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def entry_named(document, name):
    return next(check for check in document["checks"] if check["name"] == name)


class TestArguments:
    def test_two_word_commands(self):
        assert normalize_argv(["check", "go", "--space", "x"]) == ["check-go", "--space", "x"]
        assert normalize_argv(["lcs", "--space", "x"]) == ["lcs", "--space", "x"]
        assert normalize_argv(["check", "--help"]) == ["check", "--help"]

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2

    def test_space_and_file_are_exclusive(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["validate", "--space", "heisenberg", "--file", "x.json"])
        assert excinfo.value.code == 2

    def test_negative_samples(self, capsys):
        code, document = run_json(capsys, "check-go", "--space", "heisenberg", "--samples", "-1")
        assert code == 2
        assert document["verdict"] == "error"

    def test_missing_config_file(self, capsys):
        code, document = run_json(capsys, "catalog-list", "--config", "absent.json")
        assert code == 2
        assert "absent.json" in document["error"]


class TestCatalog:
    def test_list(self, capsys):
        code, document = run_json(capsys, "catalog", "list")
        assert code == 0
        ids = [entry["id"] for entry in document["subject"]["entries"]]
        assert ids == ["heisenberg", "sphere-un", "sp1-spn", "kath-olbrich", "sl3-killing"]

    def test_pretty_list(self, capsys):
        assert main(["catalog", "list", "--pretty"]) == 0
        out = capsys.readouterr().out
        assert "kath-olbrich" in out
        assert not out.lstrip().startswith("{")

    def test_unknown_id(self, capsys):
        code, document = run_json(capsys, "validate", "--space", "spin9")
        assert code == 2
        assert "spin9" in document["error"]

    def test_export_then_validate(self, capsys, tmp_path):
        bundle = tmp_path / "heisenberg.json"
        assert main(["catalog", "export", "--id", "heisenberg", "--output", str(bundle)]) == 0
        assert capsys.readouterr().out == ""
        assert "algebra" in json.loads(bundle.read_text())
        code, document = run_json(capsys, "validate", "--file", str(bundle))
        assert code == 0
        assert entry_named(document, "reductive_space")["dim_m"] == 3

    def test_missing_bundle(self, capsys):
        code, _ = run_json(capsys, "validate", "--file", "absent.json")
        assert code == 2


class TestStructureCommands:
    def test_signature_with_killing(self, capsys):
        code, document = run_json(capsys, "signature", "--space", "sl3-killing", "--killing")
        assert code == 0
        assert entry_named(document, "metric")["signature"]["n_plus"] == 5
        assert entry_named(document, "killing")["signature"] == \
            {"n_plus": 5, "n_minus": 3, "n_zero": 0}

    def test_lcs(self, capsys):
        code, document = run_json(capsys, "lcs", "--space", "kath-olbrich", "--m", "2")
        assert code == 0
        series = entry_named(document, "lower_central_series")
        assert series["dims"] == [8, 6, 5, 3, 2, 0]
        assert series["step"] == 5

    def test_lcs_of_nilradical(self, capsys):
        code, document = run_json(capsys, "lcs", "--space", "heisenberg", "--nilradical")
        assert code == 0
        assert entry_named(document, "lower_central_series")["dims"] == [3, 1, 0]

    def test_invariance_needs_trivial_isotropy(self, capsys):
        code, _ = run_json(capsys, "check", "invariance", "--space", "heisenberg")
        assert code == 2

    @pytest.mark.parametrize("argv", [
        ["check", "invariance", "--space", "kath-olbrich", "--m", "2"],
        ["check", "invariance", "--space", "sl3-killing", "--killing"],
    ])
    def test_invariance(self, capsys, argv):
        code, document = run_json(capsys, *argv)
        assert code == 0
        assert document["verdict"] == "pass"


class TestChecks:
    def test_go_survey(self, capsys):
        code, document = run_json(capsys, "check-go", "--space", "kath-olbrich", "--m", "3",
                                  "--samples", "50", "--seed", "7")
        assert code == 0
        assert document["seed"] == 7
        assert document["samples"] == 50

    def test_go_counterexample_from_file(self, capsys, tmp_path, heis3_left_invariant):
        bundle = tmp_path / "heis3.json"
        dump_json(space_to_dict(heis3_left_invariant), str(bundle))
        code, document = run_json(capsys, "check", "go", "--file", str(bundle), "--samples", "0")
        assert code == 1
        assert document["verdict"] == "fail"
        assert document["witness"] is not None

    def test_reports_are_deterministic(self, capsys):
        argv = ["check", "go", "--space", "sphere-un", "--n", "3", "--samples", "4", "--seed", "2"]
        first = run_json(capsys, *argv)
        second = run_json(capsys, *argv)
        assert first == second

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "13")
        code, document = run_json(capsys, "check-go", "--space", "sphere-un", "--samples", "2")
        assert code == 0
        assert document["seed"] == 13

    def test_seed_flag_beats_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "13")
        _, document = run_json(capsys, "check-go", "--space", "sphere-un", "--samples", "2",
                               "--seed", "1")
        assert document["seed"] == 1

    def test_two_step(self, capsys):
        code, document = run_json(capsys, "check-two-step", "--space", "heisenberg",
                                  "--p", "1", "--q", "0")
        assert code == 0
        assert entry_named(document, "conclusion_two_step")["passed"]

    def test_two_step_without_nilradical(self, capsys):
        code, _ = run_json(capsys, "check", "two-step", "--space", "sl3-killing")
        assert code == 2

    def test_weak_symmetry_survey(self, capsys):
        code, document = run_json(capsys, "check", "weak-symmetry", "--space", "sphere-un",
                                  "--samples", "3", "--seed", "5")
        assert code == 0
        assert document["samples"] == 3

    def test_weak_symmetry_single_vector(self, capsys):
        code, document = run_json(capsys, "check", "weak-symmetry", "--space", "heisenberg",
                                  "--xi", "1,0,-1/2")
        assert code == 0
        assert entry_named(document, "reversal")["passed"]
        assert entry_named(document, "grid")["passed"]

    def test_weak_symmetry_without_recipe(self, capsys):
        code, _ = run_json(capsys, "check", "weak-symmetry", "--space", "kath-olbrich")
        assert code == 2


class TestExpImageDemo:
    def test_matrix_decision(self, capsys):
        code, document = run_json(capsys, "demo", "exp-image",
                                  "--matrix", "[[-2, 0, 0], [0, -0.5, 0], [0, 0, 1]]")
        assert code == 0
        assert entry_named(document, "decision")["verdict"] == "no"

    def test_bad_matrix(self, capsys):
        code, _ = run_json(capsys, "demo-exp-image", "--matrix", "[[1, 2]")
        assert code == 2

    def test_survey(self, capsys):
        code, document = run_json(capsys, "demo-exp-image", "--samples", "10", "--seed", "3")
        assert code == 0
        assert document["seed"] == 3


class TestMalformedBundles:
    @pytest.fixture
    def bundle(self, heis3_left_invariant):
        return space_to_dict(heis3_left_invariant)

    def run_bundle(self, capsys, tmp_path, data):
        path = tmp_path / "bundle.json"
        path.write_text(json.dumps(data))
        return run_json(capsys, "validate", "--file", str(path))

    def test_duplicate_basis_names(self, capsys, tmp_path, bundle):
        bundle["algebra"]["basis"] = ["x", "x", "z"]
        bundle["algebra"]["brackets"] = []
        code, document = self.run_bundle(capsys, tmp_path, bundle)
        assert code == 2
        assert "Duplicate basis names" in document["error"]

    @pytest.mark.parametrize("dim", ["two", 2.5, None, [3]])
    def test_bad_dim(self, capsys, tmp_path, bundle, dim):
        bundle["algebra"]["dim"] = dim
        code, document = self.run_bundle(capsys, tmp_path, bundle)
        assert code == 2
        assert document["verdict"] == "error"

    def test_bad_metric_dim(self, capsys, tmp_path, bundle):
        bundle["metric"]["dim"] = "three"
        code, _ = self.run_bundle(capsys, tmp_path, bundle)
        assert code == 2

    def test_repeated_term(self, capsys, tmp_path, bundle):
        terms = bundle["algebra"]["brackets"][0]["terms"]
        terms.append(dict(terms[0]))
        code, document = self.run_bundle(capsys, tmp_path, bundle)
        assert code == 2
        assert "twice" in document["error"]

    @pytest.mark.parametrize("field,value", [
        ("h_basis", [["1", "0"]]),
        ("m_basis", "not a list"),
        ("m_basis", [["1", "0", "x"]]),
        ("metric", {"dim": 3, "gram": [["1", "0"], ["0", "1", "0"]]}),
    ])
    def test_ragged_or_garbled_fields(self, capsys, tmp_path, bundle, field, value):
        bundle[field] = value
        code, _ = self.run_bundle(capsys, tmp_path, bundle)
        assert code == 2

    def test_not_an_object(self, capsys, tmp_path):
        code, _ = self.run_bundle(capsys, tmp_path, [1, 2, 3])
        assert code == 2
