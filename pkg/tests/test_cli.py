import json

import pytest

import plucker_cli
from plucker_cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ws_on_preset(capsys):
    code, out, _ = run(capsys, "ws", "--preset", "ws-six")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["ws"] is True
    assert data["layout"]["i_seq"] == [10, 1, 2, 3, 4]


def test_ws_on_interleaved_tuples(capsys):
    code, out, _ = run(capsys, "ws", "--I", "1,3,5", "--J", "2,4,6")
    assert code == EXIT_OK
    assert json.loads(out)["ws"] is False


def test_malformed_tuple_is_a_usage_error(capsys):
    code, _, err = run(capsys, "ws", "--I", "1,x", "--J", "2,4")
    assert code == EXIT_USAGE
    assert "cannot parse" in err


def test_missing_tuple_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as info:
        main(["layout", "--I", "1,3"])
    assert info.value.code == EXIT_USAGE


def test_layout_text_format(capsys):
    code, out, _ = run(capsys, "layout", "--preset", "layout-six", "--format", "text")
    assert code == EXIT_OK
    assert "eta: 5" in out


def test_system_reports_terms(capsys):
    code, out, _ = run(capsys, "system", "--preset", "ws-six", "--r", "3")
    data = json.loads(out)
    assert code == EXIT_OK
    assert len(data["systems"]) == 1
    assert len(data["systems"][0]["terms"]) == 5
    assert data["systems"][0]["display_agrees"] is True


def test_decompose_is_deterministic(capsys):
    first = run(capsys, "decompose", "--preset", "complement-three", "--seed", "7")
    second = run(capsys, "decompose", "--preset", "complement-three", "--seed", "7")
    assert first == second
    data = json.loads(first[1])
    assert len(data["terms"]) == 2
    assert data["sum"] == data["value"]


def test_decompose_reads_matrix_file(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(
        json.dumps({"rows": 2, "cols": 2, "entries": ["2", "1", "1", "1"]}), encoding="utf-8"
    )
    code, out, _ = run(capsys, "decompose", "--I", "1,3", "--J", "2,4", "--matrix", str(path))
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["sum"] == data["value"]


def test_certify_weakly_separated(capsys):
    code, out, _ = run(capsys, "certify", "--preset", "ws-six", "--r", "3")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["all_valid"] is True
    assert len(data["certificates"]) == 5


def test_verify_exit_codes(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--preset", "interleaved-two", "--samples", "4", "--mode", "quick")
    assert code == EXIT_VIOLATION
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--I", "1,2", "--J", "3,4", "--samples", "2", "--mode", "quick", "--out", str(target)
    )
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["holds"] is True


def test_search_exit_codes(capsys):
    code, out, _ = run(capsys, "search", "--preset", "interleaved-three", "--budget", "20")
    assert code == EXIT_VIOLATION
    assert json.loads(out)["witness"]["l"] >= 1
    code, out, _ = run(capsys, "search", "--preset", "ws-six")
    assert code == EXIT_OK
    assert json.loads(out)["witness"] is None
    code, _, err = run(capsys, "search", "--preset", "interleaved-two", "--budget", "0")
    assert code == EXIT_BUDGET
    assert "0 attempts" in err


def test_laplace_seven(capsys):
    code, out, _ = run(capsys, "laplace", "--laplace-preset", "laplace-seven")
    data = json.loads(out)
    assert code == EXIT_OK
    assert len(data["rows"]) == 8
    assert data["rows"][-1]["identity"] is True
    assert all(len(row["coefficients"]) == 1 for row in data["rows"][:-1])
    assert data["minors"][0]["first"] == [[1, 2, 3, 4], [4, 5, 6, 7]]


def test_laplace_bad_d(capsys):
    code, _, err = run(capsys, "laplace", "--n", "3", "--d", "3")
    assert code == EXIT_USAGE
    assert "1 <= d < n" in err


def test_gen_is_tnn(capsys):
    code, out, _ = run(capsys, "gen", "--n", "3", "--m", "3", "--seed", "5")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["tnn"] is True
    assert data["config"]["seed"] == 5


def test_gen_from_bad_config(capsys, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"seed": 1, "n": 3, "m": 2, "density": "3"}), encoding="utf-8")
    code, _, err = run(capsys, "gen", "--config", str(path))
    assert code == EXIT_USAGE
    assert "density" in err


def test_render_diagram(capsys, tmp_path):
    diagram = json.dumps({"s": 2, "edges": [[1, 4], [2, 3]]})
    code, out, _ = run(capsys, "render", "--diagram", diagram, "--out", str(tmp_path))
    files = json.loads(out)["files"]
    assert code == EXIT_OK
    assert files == [str(tmp_path / "diagram_s2_1-4_2-3.svg")]


def test_render_compatible_set(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "--preset", "complement-three", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert len(json.loads(out)["files"]) == 3


def test_command_table_is_complete():
    assert set(plucker_cli.COMMANDS) == {
        "ws", "layout", "system", "decompose", "certify", "verify", "search", "laplace", "gen", "render",
    }


def test_zero_denominator_in_matrix_file(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(
        json.dumps({"rows": 2, "cols": 2, "entries": [["1", "0"], "1", "1", "1"]}), encoding="utf-8"
    )
    code, _, err = run(capsys, "decompose", "--I", "1,3", "--J", "2,4", "--matrix", str(path))
    assert code == EXIT_USAGE
    assert "malformed matrix" in err


def test_verify_equal_sets(capsys):
    code, out, _ = run(capsys, "verify", "--I", "1,3", "--J", "1,3", "--samples", "1", "--mode", "quick")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["results"] == []
    assert data["holds"] is True


def test_certify_exit_code_follows_coefficients(capsys):
    code, out, _ = run(capsys, "certify", "--preset", "interleaved-two")
    assert code == EXIT_VIOLATION
    assert json.loads(out)["all_valid"] is False


def test_svg_format_for_render(capsys):
    diagram = json.dumps({"s": 2, "edges": [[1, 4], [2, 3]]})
    code, out, _ = run(capsys, "render", "--diagram", diagram, "--format", "svg")
    assert code == EXIT_OK
    assert out.lstrip().startswith("<svg")
    assert out.count("<line") == 2


def test_svg_format_rejected_elsewhere(capsys):
    code, out, err = run(capsys, "ws", "--preset", "ws-six", "--format", "svg")
    assert code == EXIT_USAGE
    assert out == ""
    assert "only available for render" in err


def test_mode_help_lists_descriptions(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    out = capsys.readouterr().out
    assert "quick:" in out
    assert "thorough:" in out
