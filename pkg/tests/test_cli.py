import json
import subprocess
import sys
from unittest.mock import patch

import pytest

from edge_powers.checks import get_check
from edge_powers.cli import EXIT_FAILURE, EXIT_USAGE, build_parser, run


@pytest.fixture(autouse=True)
def quiet_logging():
    with patch("edge_powers.cli.setup_logging"):
        yield


def _run_json(tmp_path, argv, name="out.json"):
    path = tmp_path / name
    code = run(argv + ["--json", str(path)])
    return code, json.loads(path.read_text())


def test_cli_help():
    """Test that the CLI help command works."""
    result = subprocess.run(
        [sys.executable, "-m", "edge_powers", "--help"],
        capture_output=True,
        text=True
    )
    assert result.returncode == 0
    assert "usage:" in result.stdout
    assert "fuzz" in result.stdout


def test_parser_defaults():
    args = build_parser().parse_args(["fuzz"])
    assert (args.n_max, args.trials, args.seed, args.family) == (10, 200, 0, "forest")
    args = build_parser().parse_args(["verify", "--corpus", "fig3", "--statement", "LEM-4.3", "--statement", "aim-step"])
    assert args.statement == ["LEM-4.3", "aim-step"]


def test_no_command_prints_help(capsys):
    assert run([]) == EXIT_USAGE
    assert "usage:" in capsys.readouterr().out


def test_analyze_json(tmp_path):
    code, payload = _run_json(tmp_path, ["analyze", "--corpus", "fig1", "--k", "2"])
    assert code == 0
    assert (payload["mat"], payload["indm"]) == (2, 2)
    assert payload["aim"]["2"] == 2
    assert payload["powers"][0]["regularity"] == 4


@pytest.mark.slow
def test_analyze_admissable_tree(tmp_path):
    code, payload = _run_json(tmp_path, ["analyze", "--corpus", "fig2", "--k", "2"])
    assert code == 0
    assert (payload["mat"], payload["indm"]) == (6, 3)
    assert payload["aim"]["2"] == 4
    assert payload["powers"][0]["regularity"] == 6


def test_analyze_text(capsys):
    assert run(["analyze", "--corpus", "fig3", "--k", "1"]) == 0
    assert "mat: 3  indm: 2" in capsys.readouterr().out


def test_betti_from_file(tmp_path):
    graph = tmp_path / "graph.txt"
    graph.write_text("x1 x2\nx3 x4\n")
    code, payload = _run_json(tmp_path, ["betti", "--input", str(graph), "--k", "1"])
    assert code == 0
    assert payload["ideal"]["generators"] == [["x1", "x2"], ["x3", "x4"]]
    assert payload["betti"]["regularity"] == 3


def test_betti_of_zero_power_is_usage_error(capsys):
    assert run(["betti", "--corpus", "fig3", "--k", "4"]) == EXIT_USAGE
    assert "error" in json.loads(capsys.readouterr().out)


def test_aim_json(tmp_path):
    code, payload = _run_json(tmp_path, ["aim", "--corpus", "fig2", "--k", "4"])
    assert code == 0
    assert payload["aim"] == 6
    assert payload["witness"]["k"] == 4


def test_verify_single_statement(tmp_path):
    code, payload = _run_json(
        tmp_path, ["verify", "--corpus", "fig3", "--statement", "LEM-4.4", "--k", "2"]
    )
    assert code == 0
    assert payload["failures"] == 0
    assert payload["verdicts"][0]["outcome"] == "pass"
    assert payload["verdicts"][0]["statement"] == "LEM-4.4"


def test_fuzz_json(tmp_path):
    code, payload = _run_json(
        tmp_path,
        ["fuzz", "--n-max", "6", "--trials", "3", "--seed", "42",
         "--statement", "LEM-4.3", "--statement", "THM-4.6"],
    )
    assert code == 0
    assert payload["ok"] is True
    assert payload["trials"] == 3


def test_gen_is_deterministic(capsys):
    assert run(["gen", "forest", "--n", "6", "--seed", "4"]) == 0
    first = capsys.readouterr().out
    assert run(["gen", "forest", "--n", "6", "--seed", "4"]) == 0
    assert capsys.readouterr().out == first


def test_corpus_list(tmp_path):
    code, payload = _run_json(tmp_path, ["corpus", "list"])
    assert code == 0
    assert [row["name"] for row in payload["corpus"]] == [
        "admissable-tree", "cameron-walker-tree", "distant-leaf-tree",
    ]


def test_corpus_show_needs_name(capsys):
    assert run(["corpus", "show"]) == EXIT_USAGE
    assert json.loads(capsys.readouterr().out) == {"error": "corpus show needs a graph name"}


def test_bad_field(capsys):
    assert run(["analyze", "--corpus", "fig3", "--field", "reals"]) == EXIT_USAGE
    assert "Unknown field" in json.loads(capsys.readouterr().out)["error"]


def test_missing_input(capsys):
    assert run(["analyze"]) == EXIT_USAGE
    assert "--input or --corpus" in json.loads(capsys.readouterr().out)["error"]


def test_malformed_graph_file(tmp_path, capsys):
    graph = tmp_path / "bad.txt"
    graph.write_text("a a\n")
    assert run(["analyze", "--input", str(graph)]) == EXIT_USAGE
    assert "line 1" in json.loads(capsys.readouterr().out)["error"]


def test_strict_input(tmp_path):
    graph = tmp_path / "loose.txt"
    graph.write_text("vertex a\na b\n")
    assert run(["aim", "--input", str(graph)]) == 0
    assert run(["aim", "--input", str(graph), "--strict"]) == EXIT_USAGE


def test_json_output_is_byte_identical(tmp_path):
    argv = ["analyze", "--corpus", "fig3"]
    run(argv + ["--json", str(tmp_path / "a.json")])
    run(argv + ["--json", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_fuzz_instance_timeout_flag():
    args = build_parser().parse_args(["fuzz", "--instance-timeout", "2.5"])
    assert args.instance_timeout == 2.5
    assert build_parser().parse_args(["fuzz"]).instance_timeout is None


def test_fuzz_exits_nonzero_when_a_check_raises(tmp_path, monkeypatch):
    def explode(self, ctx, k):
        raise RuntimeError("broken check")

    monkeypatch.setattr(type(get_check("LEM-4.3")), "evaluate", explode)
    code, payload = _run_json(
        tmp_path, ["fuzz", "--n-max", "6", "--trials", "4", "--seed", "1", "--statement", "LEM-4.3"]
    )
    assert code == EXIT_FAILURE
    assert payload["ok"] is False
    assert payload["crashes"] > 0
