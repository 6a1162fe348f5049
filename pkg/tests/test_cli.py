import io
import subprocess
import sys

import pytest

from dpicard.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_rot():
    code, out = run("verify", "rot", "--m", "2", "--n", "3", "--t", "1")
    assert code == 0
    assert out.count("[PASS]") == 6


def test_verify_braid_noncoprime_allowed():
    code, out = run("verify", "braid", "--m", "3", "--n", "2", "--t", "2")
    assert code == 0 and "[FAIL]" not in out


def test_verify_preconditions(capsys):
    assert run("verify", "all", "--m", "2", "--n", "2", "--t", "2")[0] == 2
    assert run("verify", "picard", "--m", "3", "--n", "2", "--t", "2")[0] == 2
    assert run("verify", "omega", "--m", "2", "--n", "3", "--t", "2")[0] == 2
    assert "error" in capsys.readouterr().err


def test_records_format_and_determinism():
    a = run("verify", "picard", "--m", "2", "--n", "3", "--t", "2", "--format", "records", "--samples", "5")
    b = run("verify", "picard", "--m", "2", "--n", "3", "--t", "2", "--format", "records", "--samples", "5")
    assert a == b and a[0] == 0
    lines = a[1].splitlines()
    assert all(len(ln.split("\t")) == 5 for ln in lines)
    assert lines[-1].startswith("summary\t")


def test_failing_check_gives_nonzero_exit():
    code, out = run("verify", "braid", "--m", "2", "--n", "3", "--t", "1")
    assert code == 1 and "[FAIL]" in out


def test_apply_examples():
    code, out = run("apply", "", "P1", "--m", "2", "--n", "3")
    assert code == 0 and out.splitlines()[1].split() == ["0:", "1"]
    code, out = run("apply", "Q1 Q1 H0", "P4", "--m", "2", "--n", "3", "--right-to-left")
    assert out.splitlines()[1:] == ["  0: 1"]
    code, out = run("apply", "H0", "P1", "--m", "2", "--n", "3")
    assert out.splitlines()[1:4] == ["  -2: 4", "  -1: 5", "  0: 1"]
    assert run("apply", "H0 Z", "P1", "--m", "2", "--n", "3")[0] == 2


def test_apply_complex_file(tmp_path):
    from dpicard.equivalences import x_complex
    from dpicard.nakayama import NakayamaSpec
    alg = NakayamaSpec(2, 3, 1).algebra()
    path = tmp_path / "x.cx"
    path.write_text(x_complex(alg, 3).text())
    code, out = run("apply", "H0", str(path), "--m", "2", "--n", "3")
    assert code == 0 and out.startswith("complex over N_{6,2}")


def test_group_commands():
    assert run("group", "act", "--affine", "2", "s0", "y0") == (0, "y1\n")
    assert run("group", "trivial", "--affine", "2", "") == (0, "trivial\n")
    assert run("group", "map", "--phi", "3", "s2") == (0, "s3 s3 s2 s1 s2^-1 s3^-1 s3^-1\n")
    assert run("group", "reduce", "y1 y1^-1") == (0, "1\n")
    assert run("group", "map", "--psi", "2", "3", "s1") == (0, "s1 s3 s5\n")
    assert run("group", "act", "--affine", "2", "s7", "y0")[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dpicard", "group", "reduce", "s1 s1^-1 s2"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "s2\n"
