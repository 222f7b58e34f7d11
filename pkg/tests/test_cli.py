import subprocess
import sys

import pytest

from waring import cli, expsums


def call(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (["constants"], "omega,3.5482921"),
    (["omega"], "omega,3.548292"),
    (["delta", "--k", "14", "--v", "26"], "14,26,4.3534"),
    (["delta", "--k", "14", "--v", "26", "--mode", "table"], "4.039939"),
    (["tau", "--k", "14", "--mode", "table"], "114.186"),
    (["delta-star", "--k", "14", "--s", "89"], "-0.0044"),
    (["delta-star", "--k", "14", "--s", "89", "--candidates"], "t,value"),
    (["g0", "--k", "14", "--mode", "table"], "14,88.48"),
    (["bounds", "--range", "14..20"], "20,136.84"),
    (["bounds", "--k", "30", "--mode", "formula"], "closed form"),
    (["smooth", "--P", "10", "--R", "2"], "1\n2\n4\n8\n"),
    (["smooth", "--P", "20", "--R", "5", "--q", "6", "--pi", "2"], "1\n3\n9\n"),
    (["smooth", "--P", "1", "--R", "5", "--M", "10", "--pi", "3"], "15\n27\n"),
    (["weyl", "--alpha", "1/2", "--k", "2", "--P", "10", "--R", "2"], "1/2,2,"),
    (["verify", "--lemma", "3.1", "--k", "2", "--P", "30", "--R", "5", "--q", "6", "--M", "7"], "3.1,100"),
    (["verify", "--lemma", "3.3", "--k", "3", "--P", "30", "--R", "5", "--q", "2", "--M", "6"], "3.3,100"),
    (["verify", "--lemma", "4.1", "--k", "2", "--P", "30", "--R", "5", "--M", "6"], "4.1,100"),
    (["verify", "--lemma", "2.3", "--k", "2", "--P", "20", "--q", "1", "--w", "3", "--Q", "2",
      "--samples", "5"], "2.3,5"),
    (["arcs", "--Q", "2", "--P", "10", "--k", "2"], "num_lo,den_lo"),
    (["arcs", "--Q", "2", "--P", "10", "--k", "2", "--shell"], "num_lo,den_lo"),
    (["moment", "--k", "2", "--P", "4", "--R", "4", "--t", "2"], "28,exact-even-count"),
    (["moment", "--k", "2", "--P", "10", "--R", "10", "--t", "1", "--region-Q", "2"], "fourier-exact"),
    (["moment", "--k", "2", "--P", "10", "--R", "10", "--t", "1", "--region-Q", "2", "--quadrature"],
     "quadrature"),
    (["reps", "--n", "25", "--s", "2", "--k", "2"], "2\n"),
    (["reps", "--n", "25", "--s", "2", "--k", "2", "--smooth-P", "5", "--smooth-R", "3"], "2\n"),
    (["gauss", "--q", "4", "--a", "1", "--k", "2"], "2,2"),
    (["singular", "--n", "5", "--s", "5", "--k", "2", "--X", "1"], "1\n"),
    (["scaling-report", "--P-list", "20,30"], "Q,moment,predictor,ratio"),
])
def test_subcommands(capsys, argv, expected):
    code, out, err = call(capsys, *argv)
    assert code == 0, err
    assert expected in out


def test_exit_codes(capsys, monkeypatch):
    assert call(capsys, "tau")[0] == 2
    assert call(capsys, "nope")[0] == 2
    assert call(capsys, "g0", "--k", "2")[0] == 2
    assert call(capsys, "bounds", "--range", "14..21")[0] == 2
    assert call(capsys, "moment", "--k", "3", "--P", "400", "--R", "7", "--t", "3", "--budget", "1000")[0] == 3
    assert call(capsys, "constants", "--budget", "0")[0] == 2
    monkeypatch.setattr(expsums, "identity_atol", lambda ctx: 0.0)
    code, _, err = call(capsys, "verify", "--lemma", "3.1", "--k", "2", "--P", "20", "--R", "3")
    assert code == 1 and "verification failed" in err


def test_decimal_warning(capsys):
    code, out, err = call(capsys, "weyl", "--alpha", "0.25", "--k", "2", "--P", "10", "--R", "3")
    assert code == 0 and "1/4" in out and "warning" in err


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert cli.run(["bounds", "--range", "14..16", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""
    assert a.read_text().startswith("k,G0,v,H")


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "waring.cli", "gauss", "--q", "2", "--a", "1", "--k", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("re,im")
