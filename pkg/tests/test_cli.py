"""Tests for the command-line front end."""

import json

import pytest

from cdgor.cli import EXIT_ERROR, EXIT_FALSE, EXIT_OK, build_parser, run
from cdgor.export import save_object, write_json
from cdgor.flagvec import format_cd, parse_cd
from cdgor.realize import build_cycle_poset


class TestFeasible:

    def test_case_one(self, capsys):
        assert run(["feasible", "--rank5-cd", "1,0,1,1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "CaseI"

    def test_case_two_json(self, capsys):
        assert run(["feasible", "--rank5-cd", "1,1,1,1", "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data == {"verdict": "CaseII", "witness": {"b": [0, 0, 1], "c": [0, 1, 0]}}

    def test_rank6_infeasible(self, capsys):
        assert run(["feasible", "--rank6-d", "3,3"]) == EXIT_FALSE
        assert capsys.readouterr().out.strip() == "infeasible"

    def test_gamma4(self, capsys):
        assert run(["feasible", "--gamma4", "4,4"]) == EXIT_OK
        assert "feasible" in capsys.readouterr().out

    def test_rank6_unzip_witness(self, capsys):
        assert run(["feasible", "--rank6-d", "5,5", "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data == {"verdict": "feasible",
                        "witness": {"path": "unzip", "a": 2, "b": 3, "r": 1}}

    def test_rank6_join_witness(self, capsys):
        assert run(["feasible", "--rank6-d", "4,4", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["witness"] == {"path": "join",
                                                                  "alpha": [2, 0, 2, 4]}

    def test_gamma4_witness(self, capsys):
        assert run(["feasible", "--gamma4", "7,7", "--format", "json"]) == EXIT_OK
        witness = json.loads(capsys.readouterr().out)["witness"]
        assert witness == {"path": "direct", "a": 5, "b": 2, "r": 3,
                           "suspension": "no product witness"}

    def test_gamma4_witness_text(self, capsys):
        assert run(["feasible", "--gamma4", "3,1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "suspension" in out
        assert out.strip().endswith("feasible")


class TestUsageErrors:

    @pytest.mark.parametrize("argv", [
        [],
        ["feasible"],
        ["feasible", "--rank5-cd", "1,2,3"],
        ["feasible", "--rank5-d", "1,x"],
        ["realize-d", "--rank", "7", "--d", "1,1,0"],
        ["realize-d", "--rank", "5", "--d", "2,1,0"],
        ["flag-sphere", "--gamma", "1,-1,0"],
        ["grid", "--suite", "rank5-d", "--max", "2", "--workers", "0"],
    ])
    def test_exit_two(self, argv, capsys):
        assert run(argv) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error: usage:")

    def test_missing_file(self, tmp_path, capsys):
        assert run(["invariants", str(tmp_path / "absent.json")]) == EXIT_ERROR
        assert "FileNotFoundError" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("[1, 2")
        assert run(["verify", str(path)]) == EXIT_ERROR
        assert "error: MalformedFile:" in capsys.readouterr().err

    def test_bad_budget_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("CDGOR_BUDGET", "many")
        assert run(["realize-cd", "--alpha", "0,1,0,0", "--verify"]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error: ValueError:")


class TestRealize:

    def test_realize_cd_verify(self, capsys):
        assert run(["realize-cd", "--alpha", "0,1,0,0", "--verify"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "c^4 + cdc" in out
        assert "✓ verified" in out

    def test_unit_coefficients_are_documented(self, capsys):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["realize-cd", "--help"])
        help_text = " ".join(capsys.readouterr().out.split())
        assert "'c^4 + 1*cdc' is read as the same polynomial" in help_text
        assert format_cd(parse_cd("c^4 + 1*cdc")) == "c^4 + cdc"

    def test_realize_cd_infeasible(self, capsys):
        assert run(["realize-cd", "--alpha", "2,0,2,3"]) == EXIT_FALSE
        assert "InfeasibleTarget" in capsys.readouterr().err

    def test_output_is_byte_identical(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert run(["realize-cd", "--alpha", "1,1,1,1", "--out", str(first), "-q"]) == EXIT_OK
        assert run(["realize-cd", "--alpha", "1,1,1,1", "--out", str(second), "-q"]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert (tmp_path / "a.trace.json").read_bytes() == (tmp_path / "b.trace.json").read_bytes()

    def test_realize_d_rank6(self, tmp_path, capsys):
        out = tmp_path / "q.json"
        assert run(["realize-d", "--rank", "6", "--d", "1,5,5", "--out", str(out),
                    "--verify", "--budget", "10"]) == EXIT_OK
        text = capsys.readouterr().out
        assert "skipped (" in text
        assert "✓ verified" in text

    def test_realize_d_json(self, capsys):
        assert run(["realize-d", "--rank", "5", "--d", "1,4,4", "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "poset"
        assert data["target"] == {"d": [1, 4, 4], "alpha": [2, 0, 2, 4]}
        assert "elements" in data["object"]

    def test_realize_d_infeasible(self):
        assert run(["realize-d", "--rank", "5", "--d", "1,3,3"]) == EXIT_FALSE

    def test_flag_sphere(self, tmp_path, capsys):
        out = tmp_path / "s.json"
        assert run(["flag-sphere", "--gamma", "1,1,0", "--out", str(out), "--verify"]) == EXIT_OK
        assert "✓ verified" in capsys.readouterr().out
        assert (tmp_path / "s.trace.json").exists()


class TestFileCommands:

    def test_invariants_of_polygon(self, tmp_path, capsys):
        path = tmp_path / "c5.json"
        save_object(build_cycle_poset(5), path)
        assert run(["invariants", str(path), "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["cd_index"] == "c^2 + 3*d"
        assert data["d_vector"] == [1, 3]
        assert data["flag_f"]["1,2"] == 10

    def test_invariants_of_chain(self, tmp_path, chain3, capsys):
        path = tmp_path / "chain.json"
        save_object(chain3, path)
        assert run(["invariants", str(path), "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["cd_index"] is None

    def test_invariants_of_complex(self, tmp_path, octahedron, capsys):
        path = tmp_path / "oct.json"
        save_object(octahedron, path)
        assert run(["invariants", str(path), "--format", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["f_vector"] == [1, 6, 12, 8]
        assert data["gamma"] == [1, 0]

    def test_verify_poset_with_homology(self, tmp_path, capsys):
        path = tmp_path / "c4.json"
        save_object(build_cycle_poset(4), path)
        assert run(["verify", str(path), "--homology"]) == EXIT_OK
        assert "✓ passed" in capsys.readouterr().out

    def test_verify_chain_fails(self, tmp_path, chain3):
        path = tmp_path / "chain.json"
        save_object(chain3, path)
        assert run(["verify", str(path), "-q"]) == EXIT_FALSE

    def test_verify_non_sphere(self, tmp_path, capsys):
        path = tmp_path / "two.json"
        write_json({"vertices": [0, 1, 2, 3, 4, 5],
                    "facets": [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]}, path)
        assert run(["verify", str(path), "--homology", "--format", "json"]) == EXIT_FALSE
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is False
        assert data["certification"]["passed"] is False


class TestGridAndCompare:

    def test_grid_quiet(self, capsys):
        assert run(["grid", "--suite", "rank5-d", "--max", "3", "-q"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "PASS"

    def test_grid_report_file(self, tmp_path):
        path = tmp_path / "report.json"
        assert run(["grid", "--suite", "rank6-d", "--max", "2", "--no-homology",
                    "--out", str(path), "-q"]) == EXIT_OK
        report = json.loads(path.read_text())
        assert report["passed"] is True
        assert report["suite"] == "rank6-d"

    def test_compare(self, capsys):
        assert run(["compare", "--k", "4", "--max", "5"]) == EXIT_OK
        assert "0 differ" in capsys.readouterr().out
