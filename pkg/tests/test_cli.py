import json
import subprocess
import sys

import pytest

from tightclose.cli import main, parse_q_range, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ranges():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("1,3") == [1, 3]
    assert parse_q_range("p^1..p^2") == [1, 2]


def test_hypersurface_n3(capsys):
    code, out, _ = run(capsys, "hypersurface", "--N", "3", "--p", "7", "--n-max", "6")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == "tightclose/1"
    assert rep["e_star"] == [3, 1, 0] and rep["r_star"] == 1 and rep["f_rational"] is False
    assert [r["length"] for r in rep["lengths"]] == [2, 7, 15, 26, 40, 57]


def test_hypersurface_n2_defaults(capsys):
    code, out, _ = run(capsys, "hypersurface", "--N", "2")
    rep = json.loads(out)
    assert code == 0 and rep["p"] == 5
    assert rep["e_star"][1] == 0 and rep["f_rational"] is True and rep["all_powers_tightly_closed"]


def test_hypersurface_n4(capsys):
    code, out, _ = run(capsys, "hypersurface", "--N", "4", "--p", "5", "--n-max", "6")
    assert code == 0 and json.loads(out)["e_star"] == [4, 3, 1]


@pytest.mark.parametrize("argv", [
    ["hypersurface", "--N", "3", "--p", "3"],
    ["hypersurface", "--N", "1"],
    ["gb", "--p", "6", "--vars", "x", "x"],
    ["gb", "--p", "7", "--vars", "x", "x +"],
    ["verify", "--suite", "nope"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["hypersurface"])
    assert info.value.code == 2


def test_sr_path(capsys, fixture_dir):
    code, out, _ = run(capsys, "sr", str(fixture_dir / "path.txt"))
    rep = json.loads(out)
    assert code == 0
    assert rep["eulerian"] is True and rep["h"] == [1, 1, 0]
    assert all(r["agree"] for r in rep["length_table"])
    assert rep["equivalences"]["seed"] == 0


def test_sr_triangle_boundary(capsys, fixture_dir):
    code, out, _ = run(capsys, "sr", str(fixture_dir / "triangle_boundary.txt"))
    rep = json.loads(out)
    assert code == 0 and rep["eulerian"] is False and rep["ed_star"] == 1


def test_sr_bad_files(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(capsys, "sr", str(empty))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n2 q\n")
    code, _, err = run(capsys, "sr", str(bad))
    assert code == 2 and "line 2" in err


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "initial-ideal", "--N", "2..4", "--q", "p^1..p^2", "--k", "1..3")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 18 and all(r["pass"] for r in rows)
    code, out, _ = run(capsys, "verify", "--suite", "binomial", "--d", "1..6", "--k", "1..6", "--n", "0..12")
    assert code == 0 and len(out.splitlines()) == 36
    code, out, _ = run(capsys, "verify", "--suite", "tight-intersection", "--N", "3", "--p", "7", "--n-max", "4")
    assert code == 0 and len(out.splitlines()) == 4


def test_verify_jobs_output_is_canonical(capsys, monkeypatch):
    argv = ["verify", "--suite", "binomial,watanabe,hspoly", "--d", "1..2"]
    _, serial, _ = run(capsys, *argv)
    monkeypatch.setenv("TIGHTCLOSE_JOBS", "3")
    _, parallel, _ = run(capsys, *argv)
    assert serial == parallel


def test_gb_text(capsys):
    code, out, _ = run(capsys, "--emit", "text", "gb", "--p", "7", "--vars", "x y z", "--order", "lex",
                       "x^2+y", "x*y-z")
    assert code == 0 and '"x*z + y^2"' in out


def test_csv_emission(capsys):
    code, out, _ = run(capsys, "--emit", "csv", "hypersurface", "--N", "2")
    assert code == 0 and out.splitlines()[0] == "n,length,predicted,residual"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tightclose", "verify", "--suite", "binomial", "--d", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and '"pass": true' in proc.stdout
