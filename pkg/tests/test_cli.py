import json
import subprocess
import sys

import pytest

from clusterdual.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, (json.loads(cap.out) if cap.out.strip() else None), cap.err


def test_mutate(capsys):
    code, out, err = run(capsys, "mutate", "--preset", "a3", "--path", "2", "--deterministic")
    assert code == 0 and out["B"] == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    assert "mutated" in err and "generated_at" not in out


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--b", "[[0,1],[-1,0]]", "--path", "1,2", "--deterministic")
    assert code == 0
    assert out["D"] == [[1, 1], [0, 1]] and out["M"] == [[-1, 0], [1, 0]]
    assert out["cluster_text"][0] == "x1^-1*x2 + x1^-1"


def test_check_a2_d_holds(capsys):
    code, out, _ = run(capsys, "check", "--b", "[[0,1],[-1,0]]", "--property", "D", "--depth", "6")
    assert code == 0 and out["holds"] and out["checked"] == 13
    assert "generated_at" in out


@pytest.mark.parametrize("prop", ["R", "M", "MDinit", "source-sink", "sigma"])
def test_check_other_properties(capsys, prop):
    code, out, _ = run(capsys, "check", "--preset", "a3", "--property", prop, "--depth", "3", "--deterministic")
    assert code == 0 and out["holds"]


def test_check_single_path_and_k(capsys):
    code, out, _ = run(capsys, "check", "--preset", "markov", "--property", "R", "--path", "1,2", "--k", "3", "--deterministic")
    assert code == 0 and out["checked"] == 1 and out["path"] == [1, 2]


def test_check_drm_violation_exit_code(capsys):
    code, out, _ = run(capsys, "check", "--preset", "atilde31", "--property", "DRM", "--depth", "4", "--deterministic")
    assert code == 1 and out["all_violated"] and out["laws_hold"]


def test_explore(capsys):
    code, out, err = run(capsys, "explore", "--preset", "b2", "--deterministic")
    assert code == 0 and out["closed"] and out["num_seeds"] == 6
    assert "closed" in err


def test_rank2(capsys):
    code, out, _ = run(capsys, "rank2", "2", "2", "--k-max", "8", "--deterministic")
    assert code == 0 and out["status"] == "all match"


def test_search_witness(capsys):
    code, out, _ = run(capsys, "search", "--preset", "atilde31", "--property", "D", "--depth", "10", "--budget", "100000", "--deterministic")
    assert code == 1 and out["found"] and out["witness"]["holds"] is False


def test_search_none(capsys):
    code, out, _ = run(capsys, "search", "--preset", "a2", "--property", "M", "--depth", "5", "--deterministic")
    assert code == 0 and out["status"] == "none found up to bounds"


def test_input_file_and_output_file(tmp_path, capsys):
    src = tmp_path / "b.json"
    src.write_text(json.dumps({"n": 2, "B": [[0, 1], [-2, 0]]}))
    dst = tmp_path / "out.json"
    code = main(["explore", "--input", str(src), "--output", str(dst), "--deterministic"])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(dst.read_text())["num_seeds"] == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--b", "[[0,1],[1,0]]", "--property", "D"],
        ["check", "--b", "not json", "--property", "D"],
        ["mutate", "--preset", "a2", "--path", "1,x"],
        ["check", "--preset", "a3", "--property", "source-sink", "--k", "2"],
        ["check", "--preset", "markov", "--property", "source-sink"],
        ["check", "--preset", "a2", "--property", "R", "--k", "5"],
        ["rank2", "1", "1"],
        ["search", "--preset", "a2", "--property", "DRM"],
        ["explore"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out is None and "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["check", "--preset", "a2", "--property", "nope"])
    assert exc.value.code == 2


def test_deterministic_output_is_byte_identical():
    argv = [sys.executable, "-m", "clusterdual", "explore", "--preset", "a3", "--deterministic"]
    a = subprocess.run(argv + ["--threads", "1"], capture_output=True, check=True).stdout
    b = subprocess.run(argv + ["--threads", "4"], capture_output=True, check=True).stdout
    assert a == b and a
