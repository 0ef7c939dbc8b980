import json
import subprocess
import sys
from fractions import Fraction

import pytest

from schreier_dimers import cli, kasteleyn
from schreier_dimers.algebra import MultiPoly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_weights():
    assert cli.parse_weights("a=2,b=3/2") == {"a": Fraction(2), "b": Fraction(3, 2)}
    assert cli.parse_weights(None) is None
    with pytest.raises(cli.UsageError):
        cli.parse_weights("a=2,e=1")


def test_partition_hanoi_level_two(capsys):
    code, out, _ = run(capsys, "partition", "--family", "hanoi", "--n", "2")
    assert code == 0
    expected = MultiPoly.parse("a^5 + b^5 + c^5 + a^2*b^2*c + a^2*b*c^2 + a*b^2*c^2 + 2*a^2*b^2*c^2")
    assert MultiPoly.parse(out.strip()) == expected


@pytest.mark.parametrize("method", ["system", "kasteleyn", "oracle", "thm37"])
def test_partition_methods_agree(capsys, method):
    code, out, _ = run(capsys, "partition", "--family", "hanoi", "--n", "3", "--method", method,
                       "--weights", "a=2,b=3,c=1/2")
    assert code == 0
    assert out.strip() == "86084956865/16384"


def test_partition_decimal(capsys):
    code, out, _ = run(capsys, "partition", "--family", "basilica", "--n", "3", "--weights", "b=1/2",
                       "--decimal", "5")
    assert code == 0
    assert out.strip() == "0.5"


def test_verify_grigorchuk(capsys):
    code, out, _ = run(capsys, "verify", "--family", "grigorchuk", "--n", "4")
    assert code == 0
    assert out.strip() == "orientation: PASS (7 faces); pfaffian==oracle: PASS (a^8)"


def test_verify_gasket_json(capsys):
    code, out, _ = run(capsys, "verify", "--family", "gasket", "--n", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [c["name"] for c in data["checks"]] == ["system==closed", "types==oracle", "contraction==builder"]
    assert all(c["passed"] for c in data["checks"])


def test_verify_reports_failure(capsys, monkeypatch):
    original = kasteleyn.oriented_matrix

    def broken(family, n):
        m = original(family, n)
        return m.negate_label(0, 1, "b")

    monkeypatch.setattr(kasteleyn, "oriented_matrix", broken)
    code, out, _ = run(capsys, "verify", "--family", "grigorchuk", "--n", "2")
    assert code == 1
    assert "orientation: FAIL" in out


def test_verify_numeric_above_cap(capsys):
    code, out, _ = run(capsys, "verify", "--family", "basilica", "--n", "4", "--exact-cap", "8")
    assert code == 0
    assert "at a=2,b=3,c=5,d=7" in out


def test_limits_csv(capsys):
    code, out, _ = run(capsys, "limits", "--family", "grigorchuk", "--n", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,log_phi,vertices,epsilon"
    assert lines[1].startswith("1,0.0,2,0.0")
    assert lines[-1].startswith("limit,1/2*log(a)")


def test_stats_csv(capsys):
    code, out, _ = run(capsys, "stats", "--family", "gasket", "--n", "3", "--label", "c",
                       "--sources", "polynomial,oracle,closed")
    assert code == 0
    rows = out.splitlines()[1:]
    assert [r.split(",")[5:7] for r in rows] == [["9/4", "3/16"]] * 3


def test_build_and_covers(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, _, _ = run(capsys, "build", "--family", "hanoi", "--n", "2", "--output", str(target))
    assert code == 0
    assert json.loads(target.read_text())["level"] == 2
    code, out, _ = run(capsys, "covers", "--family", "hanoi", "--n", "3", "--format", "text")
    assert out.strip() == "64 covers"


def test_exit_codes(capsys):
    assert run(capsys, "partition", "--family", "hanoi", "--n", "2", "--labeling", "rotation")[0] == 2
    assert run(capsys, "partition", "--family", "grigorchuk", "--n", "0")[0] == 2
    assert run(capsys, "partition", "--family", "hanoi", "--n", "4", "--method", "kasteleyn")[0] == 3
    assert run(capsys, "covers", "--family", "hanoi", "--n", "3", "--oracle-budget", "5")[0] == 3
    assert run(capsys, "partition", "--family", "gasket", "--n", "2", "--method", "thm37")[0] == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, "build", "--family", "basilica", "--n", "4")[1]
    second = run(capsys, "build", "--family", "basilica", "--n", "4")[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schreier_dimers", "partition", "--family", "grigorchuk",
                           "--n", "5"], capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "a^16"
