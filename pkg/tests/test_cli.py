import json
import subprocess
import sys

import pytest

from superelliptic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factorize(capsys):
    code, out, _ = run(capsys, "factorize", "1", "3")
    assert code == 0
    data = json.loads(out)
    assert data["factor_count"] == 10


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "1", "3")
    data = json.loads(out)
    assert code == 0 and data["monodromy_equals_zeta_star"]
    assert data["zeta_trace"] == -2


@pytest.mark.parametrize("argv", [("verify", "1", "2"), ("factorize", "0", "3"),
                                  ("braid-check", "0"), ("chain-reduce", "2"),
                                  ("invariants", "1", "3", "--budget-cosets", "0")])
def test_unsupported_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    assert run(capsys, "verify", "x", "3")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "1", "3")
    data = json.loads(out)
    assert code == 0
    assert (data["chi"], data["pi1"], data["h1"], data["spin"], data["signature"]) == \
        (26, "trivial", [], False, -18)


def test_braid_check(capsys):
    code, out, _ = run(capsys, "braid-check", "1")
    data = json.loads(out)
    assert code == 0 and data["witness_verified"]
    assert data["witness"] == [{"conjugator": [], "generator": "R"}]


def test_braid_check_zero_length_still_finds_empty(capsys):
    code, out, _ = run(capsys, "braid-check", "2", "--witness-len", "0")
    assert code == 0 and json.loads(out)["witness_verified"]


def test_chain_reduce(capsys):
    code, out, _ = run(capsys, "chain-reduce", "3")
    data = json.loads(out)
    assert code == 0 and data["matches_chain_pattern"]
    assert data["signature_before"] == data["signature_after"] == -18


def test_output_is_deterministic(capsys):
    a = run(capsys, "verify", "2", "3")[1]
    b = run(capsys, "verify", "2", "3")[1]
    assert a == b


def test_out_file_and_pretty(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "factorize", "1", "3", "--pretty", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["factor_count"] == 10
    assert any(line.startswith("factor_count") for line in out.splitlines())


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "superelliptic.cli", "factorize", "1", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 1
