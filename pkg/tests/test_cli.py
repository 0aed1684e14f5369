import csv
import io
import json
import math

import pytest

from lambda_pt import cli
from lambda_pt.core.config import settings

FIG2A_PT = ["--set", "pt.gammaPt=0.0005", "--set", "pt.v=0.025"]
EP_PT = ["--set", f"pt.gammaPt={0.01 * math.sqrt(2)!r}", "--set", "pt.v=0.01"]


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _write_config(tmp_path, document, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_spectrum_fig2a(tmp_path):
    out = tmp_path / "spectrum.csv"
    assert cli.main(["spectrum", *FIG2A_PT, "--out", str(out)]) == 0
    (row,) = _read_csv(out)
    assert row["regime"] == "Unbroken"
    assert float(row["re_e_plus"]) == pytest.approx(0.035351803, abs=1e-9)
    assert float(row["im_e_plus"]) == 0.0
    assert float(row["orthonormality_deviation"]) <= 1e-10
    assert row["metric_pseudo_hermitian"] == "true"
    assert float(row["pt_commutator"]) == 0.0


def test_spectrum_broken_as_json(tmp_path, capsys):
    config = _write_config(tmp_path, {"pt": {"gammaPt": 0.05, "v": 0.01}, "format": "json"})
    assert cli.main(["spectrum", "--config", config]) == 0
    (row,) = json.loads(capsys.readouterr().out)
    assert row["regime"] == "Broken"
    assert row["re_e_plus"] == 0.0
    assert row["im_e_plus"] == pytest.approx(0.047958, abs=1e-6)
    assert row["metric_pseudo_hermitian"] is False
    assert row["parity_pseudo_hermitian"] is True


def test_spectrum_at_exceptional_point(tmp_path, capsys):
    out = tmp_path / "ep.csv"
    assert cli.main(["spectrum", *EP_PT, "--out", str(out)]) == 3
    (row,) = _read_csv(out)
    assert row["regime"] == "ExceptionalPoint"
    assert "re_eta11" not in row
    assert "exceptional point" in capsys.readouterr().err

    assert cli.main(["spectrum", *EP_PT, "--set", "metric=false", "--out", str(out)]) == 0


def test_spectrum_from_system_params(tmp_path):
    document = {
        "system": {
            "gamma1": 0.02, "gamma2": 0.015, "gamma3": 0.01, "vP": 0.25, "vC": 0.25,
        }
    }
    out = tmp_path / "s.csv"
    config = _write_config(tmp_path, document)
    assert cli.main(["spectrum", "--config", config, "--out", str(out)]) == 0
    (row,) = _read_csv(out)
    assert float(row["gamma_pt"]) == pytest.approx(0.005)
    assert float(row["re_e_plus"]) == pytest.approx(math.sqrt(0.125 - 0.000025))


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--config", "does-not-exist.json"],
        ["spectrum", "--set", "pt.v=0.0", "--set", "pt.gammaPt=0.01"],
        ["spectrum", "--set", "pt.v=0.1", "--set", "pt.gammaPt=0.01", "--set", "colour=red"],
        ["spectrum", "--set", "pt.v=0.1"],
        ["spectrum"],
        ["sweep", *FIG2A_PT],
        ["frobnicate"],
        ["spectrum", "--set", "novalue"],
    ],
)
def test_config_errors_exit_2(argv):
    assert cli.main(argv) == 2


def test_malformed_json_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"pt": {"v": 0.1,,}}', encoding="utf-8")
    assert cli.main(["spectrum", "--config", str(path)]) == 2
    assert f"{path}:1:" in capsys.readouterr().err


def test_field_errors_name_the_field(capsys):
    argv = ["spectrum", "--set", "pt.v=0.1", "--set", "pt.gammaPt=0.0", "--set", "pt.hbar=-1"]
    assert cli.main(argv) == 2
    assert "pt.hbar" in capsys.readouterr().err


def test_evolve_ground_start(tmp_path):
    out = tmp_path / "evolve.csv"
    argv = ["evolve", *FIG2A_PT, "--set", "grid.tEnd=100", "--set", "grid.samples=11"]
    assert cli.main([*argv, "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 11
    assert list(rows[0]) == [
        "t", "re_b1", "im_b1", "re_b2", "im_b2", "re_b3", "im_b3", "pop1", "pop2", "pop3", "frame",
    ]
    first = rows[0]
    assert (first["t"], first["pop1"], first["pop2"], first["pop3"]) == ("0", "1", "0", "0")
    assert {r["frame"] for r in rows} == {"EffectiveB"}


def test_evolve_with_system_emits_both_frames(tmp_path):
    document = {
        "system": {"gamma1": 0.002, "gamma2": 0.0015, "gamma3": 0.001, "vP": 0.025, "vC": 0.025},
        "grid": {"tEnd": 200, "samples": 21},
    }
    out = tmp_path / "both.csv"
    config = _write_config(tmp_path, document)
    assert cli.main(["evolve", "--config", config, "--out", str(out)]) == 0
    frames = [r["frame"] for r in _read_csv(out)]
    assert frames == ["EffectiveB"] * 21 + ["LabC"] * 21


def test_evolve_output_is_deterministic(tmp_path):
    argv = ["evolve", *FIG2A_PT, "--set", "grid.samples=101"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main([*argv, "--out", str(first)]) == 0
    assert cli.main([*argv, "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert b"\r\n" not in first.read_bytes()


def test_evolve_rk4_overflow_exits_4(monkeypatch):
    monkeypatch.setattr(settings, "OVERFLOW_LIMIT", 10.0)
    argv = ["evolve", "--set", "pt.gammaPt=0.05", "--set", "pt.v=0.01", "--set", "method=rk4"]
    assert cli.main(argv) == 4


def test_evolve_analytic_overflow_exits_4(capsys):
    argv = [
        "evolve", "--set", "pt.gammaPt=0.05", "--set", "pt.v=0.01",
        "--set", "grid.tEnd=20000", "--set", "grid.samples=11",
    ]
    assert cli.main(argv) == 4
    assert "no longer finite" in capsys.readouterr().err


def test_evolve_rk4_method(tmp_path):
    out = tmp_path / "rk4.csv"
    argv = [
        "evolve", *FIG2A_PT, "--set", "method=rk4",
        "--set", 'integrator={"dt": 0.5, "tEnd": 50, "recordStride": 10}',
    ]
    assert cli.main([*argv, "--out", str(out)]) == 0
    rows = _read_csv(out)
    assert [float(r["t"]) for r in rows] == pytest.approx([5.0 * k for k in range(11)])


def test_sweep_across_threshold(tmp_path):
    out = tmp_path / "sweep.csv"
    argv = [
        "sweep",
        "--set", 'sweep={"parameter": "v", "start": 0, "stop": 0.02, "points": 41, "fixed": 0.01}',
        "--out", str(out),
    ]
    assert cli.main(argv) == 0
    rows = _read_csv(out)
    assert list(rows[0]) == ["v", "re_e_plus", "im_e_plus", "regime"]
    assert float(rows[0]["re_e_plus"]) == 0.0
    assert float(rows[0]["im_e_plus"]) == pytest.approx(0.01)

    threshold = 0.01 / math.sqrt(2)
    for row in rows:
        if float(row["v"]) > threshold:
            assert float(row["im_e_plus"]) == 0.0
            assert row["regime"] == "Unbroken"
    first_unbroken = next(float(r["v"]) for r in rows if r["regime"] == "Unbroken")
    assert first_unbroken - threshold <= 0.0005


def test_validate_passes(capsys):
    assert cli.main(["validate"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "skipped: exceptional point" in out


def test_validate_detects_injected_metric_fault(monkeypatch, capsys):
    monkeypatch.setattr(settings, "DEBUG_METRIC_SCALE", 2.0)
    assert cli.main(["validate"]) == 1
    failures = [line for line in capsys.readouterr().out.splitlines() if line.startswith("FAIL")]
    assert failures
    assert all("metric_orthonormality" in line for line in failures)


def test_validate_writes_report(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["validate", *FIG2A_PT, "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert {r["point"] for r in report} >= {"fig2a", "user", "lab"}


def test_fig2_writes_both_panels(tmp_path):
    assert cli.main(["fig2", "--out", str(tmp_path)]) == 0
    for name in ("fig2a", "fig2b"):
        rows = list(csv.reader(io.StringIO((tmp_path / f"{name}.csv").read_text(encoding="utf-8"))))
        assert rows[0] == ["t", "pop1", "pop2", "pop3"]
        assert rows[1] == ["0", "1", "0", "0"]
        assert len(rows) == 4097
