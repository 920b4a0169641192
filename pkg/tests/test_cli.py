import json
import math

import numpy as np
import pytest

from wkbspec.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_theta0_stdout_and_json(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, out, _ = run(["theta0", "--tol", "1e-10", "--out", str(out_file)], capsys)
    assert code == 0
    assert "theta0 = 0.318939790" in out
    payload = json.loads(out_file.read_text())
    assert math.pi / 10.0 < payload["theta0"] < math.pi / 9.0
    assert payload["f_at_lo"] < 0.0 < payload["f_at_hi"]
    assert len(payload["f_samples"]) == 100


def test_scan_csv_deterministic(capsys):
    argv = ["scan", "--from", "0", "--to", "0.5", "--steps", "11"]
    code1, out1, _ = run(argv, capsys)
    code2, out2, _ = run(argv, capsys)
    assert code1 == code2 == 0
    assert out1 == out2  # identical argv, byte-identical output
    lines = [l for l in out1.splitlines() if not l.startswith("#")]
    assert lines[0] == "theta,f"
    assert len(lines) == 12
    theta0, f0 = (float(v) for v in lines[1].split(","))
    assert theta0 == 0.0
    assert abs(f0 + math.sqrt(2.0) * math.pi / 16.0) < 1e-14


def test_scan_header_records_argv(tmp_path):
    f1 = tmp_path / "a.csv"
    main(["scan", "--from", "0", "--to", "0.1", "--steps", "2", "--out", str(f1)])
    head = f1.read_text().splitlines()[:2]
    assert head[0].startswith("# argv: scan --from 0 --to 0.1")
    assert head[1].startswith("# version: wkbspec ")


def test_stokes_svg(tmp_path, capsys):
    out_file = tmp_path / "graph.svg"
    code, _, _ = run(
        ["stokes", "--psi", "0.6283", "--gamma", "0.3927", "--out", str(out_file)], capsys
    )
    assert code == 0
    text = out_file.read_text()
    assert text.startswith("<?xml")
    assert "<svg" in text and "</svg>" in text
    assert text.count("<polyline") == 6
    assert text.count("<circle") == 2
    assert "stroke-dasharray" in text  # the ray overlay


def test_stokes_json(tmp_path, capsys):
    out_file = tmp_path / "graph.json"
    code, _, _ = run(
        ["stokes", "--t-form", "0.809,0.588", "--format", "json", "--out", str(out_file)],
        capsys,
    )
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert len(payload["curves"]) == 6
    assert payload["compound"] is False
    assert all(len(c["points"]) > 10 for c in payload["curves"])


def test_spectrum_table(tmp_path, capsys):
    out_file = tmp_path / "spec.csv"
    code, _, _ = run(
        ["spectrum", "--alpha", "2", "--c", "1,0", "--n", "3", "--out", str(out_file)], capsys
    )
    assert code == 0
    rows = [l for l in out_file.read_text().splitlines() if not l.startswith("#")]
    assert rows[0].split(",")[:2] == ["n", "t_n"]
    t_vals = [float(r.split(",")[1]) for r in rows[1:]]
    np.testing.assert_allclose(t_vals, [3.0, 7.0, 11.0], atol=1e-7)
    s_vals = [float(r.split(",")[6]) for r in rows[1:]]
    np.testing.assert_allclose(s_vals, [1 / 3, 1 / 7, 1 / 11], atol=1e-7)


def test_resolvent_roundtrip(tmp_path, capsys):
    xs = np.linspace(0.0, 12.0, 6001)
    f_csv = tmp_path / "f.csv"
    np.savetxt(f_csv, np.column_stack([xs, np.exp(-4.0 * (xs - 3.0) ** 2)]), delimiter=",", fmt="%.15e")
    out_file = tmp_path / "y.csv"
    code, _, _ = run(
        [
            "resolvent",
            "--alpha", "0.6666666666666666",
            "--c", "0.5,0.8660254037844386",
            "--input", str(f_csv),
            "--out", str(out_file),
        ],
        capsys,
    )
    assert code == 0
    text = out_file.read_text().splitlines()
    resid_line = next(l for l in text if l.startswith("# residual_max_rel:"))
    assert float(resid_line.split(":")[1]) < 1e-5
    zero_line = next(l for l in text if l.startswith("# y_at_zero:"))
    assert float(zero_line.split(":")[1]) == 0.0


def test_resolvent_rejects_bad_grid(tmp_path, capsys):
    xs = np.linspace(1.0, 2.0, 64)  # does not start at 0
    f_csv = tmp_path / "f.csv"
    np.savetxt(f_csv, np.column_stack([xs, xs]), delimiter=",", fmt="%.15e")
    code, _, err = run(
        ["resolvent", "--alpha", "1", "--c", "1,0", "--input", str(f_csv)], capsys
    )
    assert code == 1
    assert "error:" in err


def test_verify_deterministic_and_green(tmp_path, capsys):
    f1, f2 = tmp_path / "v1.txt", tmp_path / "v2.txt"
    assert main(["verify", "--per-regime", "3", "--out", str(f1)]) == 0
    assert main(["verify", "--per-regime", "3", "--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()
    assert "OK: 0 failure(s)" in f1.read_text()


def test_bad_arguments_exit_2(capsys):
    assert main(["spectrum", "--alpha", "2"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["spectrum", "--alpha", "2", "--c", "zz", "--n", "1"]) == 2
