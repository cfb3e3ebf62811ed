import json
import subprocess
import sys

import pytest

from nielsen_h1.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_presentation(capsys):
    code, out, _ = run(capsys, "verify-presentation", "--n", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["all_identity"] and len(data["relators"]) == 18
    code, out, _ = run(capsys, "verify-presentation", "--n", "8")
    assert code == 0 and "20/20" in out


def test_verify_presentation_low_rank(capsys):
    code, out, _ = run(capsys, "verify-presentation", "--n", "2", "--json")
    data = json.loads(out)
    assert code == 1
    assert not any(r["relator"].startswith("N7") for r in data["relators"])


def test_h1_json(capsys, tmp_path):
    path = tmp_path / "A.txt"
    code, out, _ = run(capsys, "h1", "--n", "5", "--ring", "z", "--json", "--dump-matrix", str(path))
    data = json.loads(out)
    assert code == 0 and data["free_rank"] == 2 and data["torsion"] == []
    assert path.read_text().split("\n", 1)[0].startswith("900 200 ")
    code, out, _ = run(capsys, "h1", "--n", "5", "--ring", "mod:3", "--json")
    assert json.loads(out)["free_rank"] == 2


def test_h1_labels(capsys):
    code, out, _ = run(capsys, "h1", "--n", "3", "--ring", "z")
    assert code == 0 and "no ground truth" in out
    code, out, _ = run(capsys, "h1", "--n", "5", "--ring", "mod:2", "--json")
    assert "outside theorem hypothesis" in json.loads(out)["labels"]


def test_deterministic_json(capsys):
    _, a, _ = run(capsys, "classes", "--n", "5", "--json")
    _, b, _ = run(capsys, "classes", "--n", "5", "--json")
    assert a == b
    data = json.loads(a)
    assert data["generates"] and data["index"] == 1


def test_johnson_and_outer(capsys):
    _, out, _ = run(capsys, "johnson-extension", "--n", "5", "--json")
    assert json.loads(out)["feasible"] is False
    _, out, _ = run(capsys, "johnson-extension", "--n", "5", "--ring", "mod:3", "--json")
    assert json.loads(out)["feasible"] is True
    _, out, _ = run(capsys, "h1-out", "--n", "5")
    assert "free rank 1" in out and "[fM] - 2[fK]" in out


def test_evaluate_and_factorize(capsys):
    code, out, _ = run(capsys, "evaluate", "--n", "5", "--cocycle", "fK", "--ia", "1,3,2", "--json")
    assert code == 0 and json.loads(out)["value"] == [{"i": 1, "j": 2, "k": 3, "c": -2}]
    code, out, _ = run(capsys, "factorize", "--n", "4", "--images", "x2*x1,x1,x3,x4", "--json")
    assert code == 0 and json.loads(out)["verified"]


@pytest.mark.parametrize("argv", [
    ["h1", "--n", "5", "--ring", "mod:4"],
    ["h1", "--n", "5", "--ring", "q"],
    ["h1", "--n", "1"],
    ["verify-paper", "--n", "4"],
    ["factorize", "--n", "3", "--images", "x1,x1,x2"],
    ["evaluate", "--n", "3", "--cocycle", "fM"],
])
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper", "--n", "5", "--json", "--scale", "0.1")
    checks = json.loads(out)["checks"]
    assert code == 0 and all(c["pass"] for c in checks.values())
    assert list(checks) == sorted(checks)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nielsen_h1", "verify-presentation", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "relators evaluate to the identity" in proc.stdout
