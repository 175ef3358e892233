import json

import pytest

from sasakian import report as rep
from sasakian.cli import main

FAST_EXAMPLES = [
    "s5-surface",
    "cylinder-c1",
    "cylinder-s5",
    "legendre-circle",
    "legendre-helix:0.5",
    "minus4-1",
    "minus4-2",
    "minus4-3",
    "cylinder-minus4-1",
    "cylinder-minus4-2",
    "cylinder-minus4-3",
]


@pytest.fixture(scope="module")
def corollary_report():
    return rep.build_report("corollary-c1", per_axis=4)


def test_corollary_report_all_pass(corollary_report):
    assert corollary_report.passed
    names = [c.name for c in corollary_report.checks]
    for expected in (
        "unit_norm",
        "integral",
        "c_parallel",
        "s_symmetry",
        "normal_laplacian",
        "mean_curvature_value",
        "bitension",
        "trace_b_ah",
        "frenet_X1",
        "frenet_X2",
        "frenet_X3",
        "lattice",
        "laplacian_eigen_x1",
        "laplacian_eigen_x2",
    ):
        assert expected in names


@pytest.mark.parametrize("name", FAST_EXAMPLES)
def test_registered_examples_pass(name):
    report = rep.build_report(name, per_axis=4)
    assert report.passed, report.to_text()


def test_unknown_example_raises():
    with pytest.raises(KeyError, match="unknown example"):
        rep.build_report("nope")


def test_json_round_trip_is_byte_identical(corollary_report):
    text = corollary_report.to_json()
    reparsed = json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"
    assert reparsed == text


def test_csv_header_and_rows(corollary_report):
    lines = corollary_report.to_csv().strip().splitlines()
    assert lines[0] == "check,residual,tolerance,pass"
    assert len(lines) == len(corollary_report.checks) + 1
    for line in lines[1:]:
        name, residual, tolerance, ok = line.split(",")
        assert ok in ("true", "false")
        assert float(residual) < float(tolerance) or ok == "false"


def test_symbolic_decimals(corollary_report):
    entry = corollary_report.computed["mean_curvature"]
    assert entry["symbolic"] == "2/3"
    assert len(entry["decimal"]) >= 17


def test_report_computed_records_grid_and_tolerance(corollary_report):
    assert corollary_report.computed["grid_points_per_axis"] == 4
    assert corollary_report.computed["tolerance_override"] is None


def test_cli_verify_pass_exit_code(capsys):
    assert main(["verify", "legendre-circle", "--grid", "4"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out


def test_cli_verify_tolerance_floor_fails(capsys):
    assert main(["verify", "legendre-circle", "--grid", "4", "--tol", "1e-20"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_unknown_example_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "does-not-exist"])
    assert exc.value.code == 2


def test_cli_json_format(capsys):
    assert main(["verify", "s5-surface", "--grid", "3", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["subject"] == "s5-surface"
    assert all(c["pass"] for c in payload["checks"])


def test_cli_csv_format(capsys):
    assert main(["verify", "s5-surface", "--grid", "3", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("check,residual,tolerance,pass\n")


def test_cli_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["verify", "legendre-circle", "--format", "json", "--out", str(target)]) == 0
    capsys.readouterr()
    payload = json.loads(target.read_text())
    assert payload["subject"] == "legendre-circle"


def test_cli_classify_c1(capsys):
    assert main(["classify", "--c", "1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["flat_solutions"]) == 1
    assert payload["case_ii"] == []
    assert payload["flat_solutions"][0]["lam"]["symbolic"] == "-1/sqrt(5)"


def test_cli_classify_nonexistence(capsys):
    assert main(["classify", "--c", "-0.5", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["flat_solutions"] == [] and payload["case_ii"] == []


def test_cli_classify_minus4(capsys):
    assert main(["classify", "--mode", "minus4", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["flat_solutions"]) == 3
    assert len(payload["case_ii"]) == 1


def test_cli_classify_minus4_rejects_explicit_c():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--mode", "minus4", "--c", "1"])
    assert exc.value.code == 2


def test_cli_classify_requires_c_or_sweep():
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--c", "1", "--c-sweep", "0:1:0.5"])
    assert exc.value.code == 2


def test_cli_classify_invalid_sweep():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--c-sweep", "1:0:-1"])
    assert exc.value.code == 2


def test_cli_classify_sweep_and_csv(capsys):
    assert main(["classify", "--c-sweep", "0.6:0.8:0.1", "--no-sweep", "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("kind,case,c,lam,alpha,gamma,delta,kappa1,kappa2,radius,source\n")
    assert "case_ii" in out


def test_cli_classify_json_round_trip(capsys):
    assert main(["classify", "--c", "1", "--format", "json"]) == 0
    text = capsys.readouterr().out
    assert json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n" == text
