"""End-to-end tests for the command line and the job runner"""

import json
import pickle
from fractions import Fraction

import pytest

from cli.main import main
from cli.runner import JobError, JobSpec, run
from core.errors import ExponentOverflow, UnknownReference

NODAL = "ring R = GF(3)[x,y] / (x*y);\n"
LINES = "ring R = GF(3)[x];\nring S = GF(3)[y];\nideal I = (x) in R;\n"
NODAL_MODULE = NODAL + "module F = free R 1;\n"
TEMPLATE = "ring R = GF(3)[x,y] / (x^{n}*y - y^2);\n"


@pytest.fixture
def spec_file(tmp_path):
    def write(text, name="input.hk"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_run_hk_on_nodal_curve():
    report = run(JobSpec("hk", ring="R", e_max=3), source=NODAL)
    assert [s.length for s in report.samples] == [5, 17, 53]
    assert report.estimate.value == 2
    assert report.estimate.error == 0
    assert len(report.provenance["input_sha256"]) == 64
    assert report.provenance["e_max"] == 3


def test_hash_ignores_layout():
    first = run(JobSpec("gb", ring="R"), source=NODAL)
    second = run(JobSpec("gb", ring="R"), source="# comment\nring R = GF(3)[x, y]/(x*y) ;")
    assert first.provenance["input_sha256"] == second.provenance["input_sha256"]
    assert "Krull dimension: 1" in first.lines


def test_job_errors_carry_context():
    with pytest.raises(JobError) as info:
        run(JobSpec("hk", ring="Q"), source=NODAL)
    assert "hk Q" in str(info.value)
    assert isinstance(info.value.cause, UnknownReference)
    assert info.value.exit_code == 2


def test_jobspec_validation():
    with pytest.raises(ValueError):
        JobSpec("plot")
    with pytest.raises(ValueError):
        JobSpec("hk", e_max=0)


def test_hk_csv(spec_file, capsys):
    code = main(["hk", "--spec", spec_file(NODAL), "--ring", "R", "--emax", "3", "--csv", "-j", "1"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["e,q,length,normalized_num,normalized_den", "1,3,5,5,3", "2,9,17,17,9", "3,27,53,53,27"]


def test_hk_json(spec_file, capsys):
    assert main(["hk", "-f", spec_file(NODAL), "--emax", "3", "--json", "-j", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["estimate"]["value"] == "2"
    assert data["samples"][2]["normalized"] == "53/27"
    assert "seconds" not in data["samples"][0]


def test_hk_table_with_timings(spec_file, capsys):
    assert main(["hk", "-f", spec_file(NODAL), "--emax", "2", "--timings", "-j", "1"]) == 0
    out = capsys.readouterr().out
    assert "seconds" in out
    assert "Estimate (two-point-fit): 2" in out


def test_verify_value_exit_codes(spec_file):
    path = spec_file(NODAL)
    assert main(["verify", "-f", path, "--against", "value:2", "--emax", "3", "--tol", "0", "-j", "1"]) == 0
    assert main(["verify", "-f", path, "--against", "value:3", "--emax", "3", "-j", "1"]) == 1


def test_bad_spec_exits_2(spec_file, capsys):
    assert main(["gb", "-f", spec_file("ring R = GF(3)[x,y] / (x*y)")]) == 2
    assert "Error" in capsys.readouterr().err
    assert main(["gb", "-f", spec_file("ring R = GF(9)[x];")]) == 2


def test_construct_fiber(spec_file, capsys):
    assert main(["construct", "fiber", "R", "S", "-f", spec_file(LINES)]) == 0
    assert "x_1*y_2" in capsys.readouterr().out


@pytest.mark.parametrize("source, args", [
    (LINES, ["fiber", "R", "S"]),
    (LINES, ["dup", "R", "I"]),
    (NODAL_MODULE, ["ideal", "R", "F"]),
])
def test_verify_constructions(spec_file, capsys, source, args):
    kind, operands = args[0], args[1:]
    code = main(["verify", "-f", spec_file(source), "--against", kind, *operands,
                 "--emax", "3", "--tol", "0", "--json", "-j", "1"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert all(v["passed"] for v in data["verdicts"])


def test_bounds(capsys):
    assert main(["bounds", "--case", "both-nonregular", "--d", "3"]) == 0
    assert "13184/6591" in capsys.readouterr().out
    assert main(["bounds", "--case", "nonsense"]) == 2


def test_wy_threshold(capsys):
    assert main(["wy", "--d", "3"]) == 0
    out = capsys.readouterr().out
    assert "1/3" in out
    assert "4/3" in out


def test_sweep(spec_file, capsys):
    template = spec_file(TEMPLATE, "family.hk")
    base = ["sweep", "--param", "n=2..3", "--template", template, "--against", "value:2",
            "--tol", "1/100", "--emax", "3", "--json"]
    assert main(base + ["-j", "1"]) == 0
    serial = capsys.readouterr().out
    data = json.loads(serial)
    assert [entry["value"] for entry in data["grid"]] == [2, 3]
    assert all(entry["report"]["passed"] for entry in data["grid"])

    assert main(base + ["-j", "2"]) == 0
    assert capsys.readouterr().out == serial


def test_job_error_pickles():
    error = JobError(JobSpec("hk", ring="Q"), UnknownReference("no ring named 'Q'"), "n=4")
    copy = pickle.loads(pickle.dumps(error))
    assert str(copy) == str(error)
    assert copy.point == "n=4"
    assert isinstance(copy.cause, UnknownReference)
    assert copy.exit_code == 2


@pytest.mark.parametrize("workers", ["1", "2"])
def test_failing_sweep_names_the_grid_point(spec_file, capsys, workers):
    template = spec_file(TEMPLATE, "family.hk")
    code = main(["sweep", "--param", "n=2..3", "--template", template, "--ring", "Z",
                 "--emax", "2", "-j", workers])
    err = capsys.readouterr().err
    assert code == 2
    assert "at n=2" in err
    assert "UnknownReference" in err


def test_exponent_overflow_exits_3(spec_file, capsys):
    assert main(["gb", "-f", spec_file("ring R = GF(3)[x] / (x^70000);")]) == 3
    assert "exponent 70000" in capsys.readouterr().err
    with pytest.raises(ExponentOverflow):
        run(JobSpec("gb", ring="R"), source="ring R = GF(3)[x] / (x^70000);")


def test_sweep_rejects_bad_range(spec_file):
    template = spec_file(TEMPLATE, "family.hk")
    assert main(["sweep", "--param", "n=2-3", "--template", template]) == 2
    assert main(["sweep", "--param", "n=3..2", "--template", template]) == 2


def test_out_writes_file(spec_file, tmp_path, capsys):
    target = tmp_path / "report.csv"
    assert main(["hk", "-f", spec_file(NODAL), "--emax", "2", "--csv", "-o", str(target), "-j", "1"]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8").splitlines()[1] == "1,3,5,5,3"


def test_report_rationals():
    report = run(JobSpec("wy", d=2), source="")
    assert dict(report.values)["1 + m_2"] == Fraction(3, 2)
