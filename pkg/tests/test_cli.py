import json
import subprocess
import sys

import pytest

from stringcount.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_algebra(capsys):
    code, out = call(capsys, "algebra", "--type", "A2^2")
    assert code == 0
    assert out["kappa0"] == 2 and out["cartan_g_prime"] == [[2, -1]]


def test_rnum_worked_vector(capsys):
    code, out = call(capsys, "rnum", "--type", "A1^1", "--nu", "1,1:4", "--pattern", "1,1:2")
    assert code == 0
    assert (out["R"], out["detF"], out["P"], out["generic_condition"]) == (2, 4, [["1,1", 0]], True)


def test_rnum_empty_pattern(capsys):
    code, out = call(capsys, "rnum", "--type", "A1^1", "--nu", "1,1:1", "--pattern", "")
    assert code == 0 and out["R"] == 1


def test_rseries(capsys):
    code, out = call(capsys, "rseries", "--type", "A1^1", "--nu", "1,2:1", "--deg", "5")
    assert code == 0 and out["series"] == "1 + y1 + y1^2"


def test_qcheck(capsys):
    code, out = call(capsys, "qcheck", "--type", "A2^2", "--deg", "4", "--mmax", "3")
    assert code == 0
    assert all(r["residual_nonzero"] == 0 for r in out["residuals"])


def test_sce(capsys):
    code, out = call(capsys, "sce", "--type", "A1^1", "--nu", "1,1:4", "--pattern", "1,1:2", "--method", "both")
    assert code == 0
    assert (out["det"], out["off_diagonal"], out["match"]) == (8, 4, True)


def test_complete(capsys):
    code, out = call(capsys, "complete", "--type", "A2^1", "--nu", "1,1:1;2,1:1", "--deg", "4")
    assert code == 0 and out["match"] is True


def test_orders(capsys):
    code, out = call(capsys, "orders", "--type", "G2^1", "--nu", "1,1:2", "--pattern", "1,3:1;2,3:1",
                     "--a", "1", "--m", "3", "--i", "1")
    assert code == 0 and out["lhs"] == out["rhs"]


@pytest.mark.parametrize(
    "argv",
    [
        ("algebra", "--type", "B2^1"),
        ("rnum", "--type", "A1^1", "--nu", "1,1", "--pattern", ""),
        ("rnum", "--type", "A1^1", "--nu", "2,1:1", "--pattern", ""),
        ("complete", "--type", "C2^1", "--nu", "1,1:1", "--deg", "2"),
        ("sce", "--type", "A1^1", "--nu", "1,1:1", "--pattern", ""),
        ("orders", "--type", "A1^1", "--nu", "", "--pattern", "", "--a", "1", "--m", "1", "--i", "2"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(list(argv)) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["rnum", "--type", "A1^1"])
    assert exc.value.code == 2


def test_singular_system_exits_1(capsys):
    # P = 0, N = 1 and K = 2 with the -1 shift: det [[0 + 1 + 2 - 1 - 2]] = 0
    code, out = call(capsys, "sce", "--type", "A1^1", "--nu", "", "--pattern", "1,1:1")
    assert code == 1 and out["error"] == "SingularMatrixError"


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out = call(capsys, "rnum", "--type", "A1^1", "--nu", "1,1:4", "--pattern", "1,1:2", "--out", str(target))
    assert code == 0 and json.loads(target.read_text()) == out
    target2 = tmp_path / "a.json"
    run(["--out", str(target2), "algebra", "--type", "A1^1"])
    assert json.loads(target2.read_text())["n"] == 1


def test_deterministic(capsys):
    argv = ("rseries", "--type", "C2^1", "--nu", "1,1:1;2,1:1", "--deg", "3")
    first = call(capsys, *argv)
    assert call(capsys, *argv) == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stringcount", "algebra", "--type", "D4^3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["d"] == [1, 3]
