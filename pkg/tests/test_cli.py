import json
import subprocess
import sys
from pathlib import Path

import pytest

from hnlab.cli import main, parse_range, UsageError
from hnlab.exactalg import parse_poly
from hnlab.report import SCHEMA_KEYS

DATA = Path(__file__).parent / "data"

MY_ALGEBRA = """\
name: my_algebra
params: [p]
constraints: ["p != 0"]
brackets:
  - {i: 1, j: 4, coeffs: [p, 0, 0, 0]}
  - {i: 2, j: 4, coeffs: [0, 1, 0, 0]}
"""

NOT_A_LIE_ALGEBRA = """\
name: broken
brackets:
  - {i: 1, j: 4, coeffs: [1, 0, 0, 0]}
  - {i: 2, j: 4, coeffs: [0, 1, 0, 0]}
  - {i: 1, j: 2, coeffs: [0, 0, 1, 0]}
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def g45_symbolic_json():
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        assert main(["analyze", "--algebra", "g4_5", "--symbolic", "--json"]) == 0
    return buf.getvalue()


def test_symbolic_report_matches_golden_file(g45_symbolic_json):
    golden = json.loads((DATA / "g4_5_symbolic.json").read_text(encoding="utf-8"))
    assert json.loads(g45_symbolic_json) == golden


def test_report_schema_and_round_trip(g45_symbolic_json):
    report = json.loads(g45_symbolic_json)
    assert tuple(report) == SCHEMA_KEYS
    assert json.loads(json.dumps(report)) == report
    assert report["scalars"]["tau"]["value"] == "2*a^2 + 2*a*b + 2*b^2 + 2*a + 2*b + 2"


def test_every_polynomial_string_is_canonical(g45_symbolic_json):
    report = json.loads(g45_symbolic_json)
    tensors = [report["F"][a]["components"] for a in "123"]
    tensors += [report["nijenhuis"][a]["components"] for a in "123"]
    tensors += [report["theta"][a] for a in "123"]
    tensors += [report["riemann"]["components"], report["ricci"]["rho"]["components"]]
    tensors += [report["ricci"]["rho_star"][a] for a in "123"]
    for comps in tensors:
        for text in comps.values():
            assert str(parse_poly(text)) == text


def test_point_report_g46(capsys):
    code, out, _ = run(capsys, "analyze", "--algebra", "g4_6", "--a", "1", "--b", "0", "--json")
    assert code == 0
    report = json.loads(out)
    assert [report["classes"][a]["minimal_class"] for a in "123"] == ["W2+W4", "W1+W2+W3", "W1+W2"]
    assert report["params"]["values"] == {"a": "1", "b": "0"}


def test_decimal_and_fraction_inputs_are_exact(capsys):
    code, out, _ = run(capsys, "analyze", "--algebra", "g4_5", "--a", "0.5", "--b", "-2/3", "--json")
    assert code == 0
    assert json.loads(out)["params"]["values"] == {"a": "1/2", "b": "-2/3"}


def test_text_report(capsys):
    code, out, err = run(capsys, "analyze", "--algebra", "g4_5", "--symbolic")
    assert code == 0 and err == ""
    assert "tau = 2*a^2 + 2*a*b + 2*b^2 + 2*a + 2*b + 2" in out
    assert "the rest follow from F(x,y,z)" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["analyze", "--algebra", "g4_5", "--a", "0", "--b", "1"], 3),
        (["analyze", "--algebra", "g4_6", "--a", "1", "--b", "-1"], 3),
        (["analyze", "--algebra", "g4_5"], 2),
        (["analyze", "--algebra", "g4_5", "--a", "1"], 2),
        (["analyze", "--algebra", "g4_5", "--symbolic", "--a", "1"], 2),
        (["analyze", "--algebra", "nowhere"], 2),
        (["sweep", "--algebra", "g4_5", "--a-range", "3:1:1", "--b-range", "1:2:1"], 2),
        (["sweep", "--algebra", "g4_5", "--a-range", "1:3:0", "--b-range", "1:2:1"], 2),
        (["sweep", "--algebra", "g4_5", "--a-range", "1:x:1", "--b-range", "1:2:1"], 2),
        (["catalog", "add", "missing.yaml"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


@pytest.mark.parametrize("argv", [["analyze", "--algebra", "g4_5", "--a", "1.5e2", "--b", "1"], ["frobnicate"], []])
def test_bad_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_diagnostics_go_to_stderr(capsys):
    code, out, err = run(capsys, "analyze", "--algebra", "g4_5", "--a", "0", "--b", "1")
    assert code == 3 and out == "" and "a != 0" in err


def test_parse_range():
    assert [str(x) for x in parse_range("0:1:1/4")] == ["0", "1/4", "1/2", "3/4", "1"]
    assert parse_range("2") == [2]
    assert parse_range("1:0:1") == []
    with pytest.raises(UsageError):
        parse_range("1:2")


def test_sweep_g45_tau_positive(capsys):
    code, out, _ = run(capsys, "sweep", "--algebra", "g4_5", "--a-range", "1:3:1", "--b-range", "1:3:1", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["points"]) == 9 and data["skipped"] == 0
    assert all(p["tau"] == 1 for p in data["points"])


def test_sweep_g46_all_sectional_positive(capsys):
    code, out, _ = run(capsys, "sweep", "--algebra", "g4_6", "--a-range", "1", "--b-range", "2", "--json")
    (point,) = json.loads(out)["points"]
    assert set(point["sectional"].values()) == {1}


def test_sweep_reports_skipped_points(capsys):
    code, out, _ = run(capsys, "sweep", "--algebra", "g4_5", "--a-range=-1:1:1", "--b-range", "1", "--workers", "1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "2 points evaluated, 1 skipped points outside the domain"


def test_sweep_is_independent_of_worker_count(capsys):
    argv = ["sweep", "--algebra", "g4_6", "--a-range=-1:1:1/2", "--b-range", "0:1:1/2", "--json"]
    serial = json.loads(run(capsys, *argv, "--workers", "1")[1])
    parallel = json.loads(run(capsys, *argv, "--workers", "3")[1])
    assert serial == parallel and len(serial["points"]) == 12


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert "[e2,e4] = a*e2" in out and "[e2,e4] = b*e2 - e3" in out


def test_catalog_add_then_list(capsys, tmp_path, isolated_registry):
    f = tmp_path / "my_algebra.txt"
    f.write_text(MY_ALGEBRA, encoding="utf-8")
    assert run(capsys, "catalog", "add", str(f))[0] == 0
    code, out, _ = run(capsys, "catalog", "list")
    assert "my_algebra" in out and "[e1,e4] = p*e1" in out
    assert run(capsys, "catalog", "add", str(f))[0] == 2
    assert run(capsys, "analyze", "--algebra", "my_algebra", "--symbolic")[0] == 0


def test_catalog_add_rejects_non_lie_algebra(capsys, tmp_path):
    f = tmp_path / "broken.yaml"
    f.write_text(NOT_A_LIE_ALGEBRA, encoding="utf-8")
    code, out, err = run(capsys, "catalog", "add", str(f))
    assert code == 4 and "Jacobi" in err
    assert run(capsys, "analyze", "--algebra", str(f), "--symbolic")[0] == 4


def test_module_entry_point(isolated_registry):
    proc = subprocess.run(
        [sys.executable, "-m", "hnlab", "analyze", "--algebra", "g4_5", "--a", "0", "--b", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3 and proc.stdout == ""
