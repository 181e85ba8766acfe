import json

import numpy as np
import pytest

from vacmirror import NonConvergenceError, SinglePoleMirror
from vacmirror.cli import main


def _read_csv_rows(path):
    rows = {}
    for line in path.read_text().splitlines():
        if line.startswith("#") or "," not in line or line[0].isalpha():
            continue
        vals = [float(x) for x in line.split(",")]
        rows[vals[0]] = vals[1:]
    return rows


def _write_table_csv(path, scale_r=1.0):
    m = SinglePoleMirror(1.0)
    om = np.linspace(0.0, 60.0, 601)
    r = scale_r * m.r(om)
    rows = np.column_stack([om, m.s(om).real, m.s(om).imag, r.real, r.imag])
    np.savetxt(path, rows, delimiter=",", header="omega,re_s,im_s,re_r,im_r", comments="")


def test_validate_single_pole_passes(tmp_path):
    out = tmp_path / "report.csv"
    code = main(["validate", "--grid", "-50:50:2001", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.startswith("# vacmirror")
    assert "passed,true" in text


def test_validate_perfect_fails_transparency(tmp_path):
    out = tmp_path / "report.csv"
    code = main(["validate", "--model", "perfect", "--grid", "-50:50:2001", "--out", str(out)])
    assert code == 1
    text = out.read_text()
    assert "transparency_pass,false" in text
    assert "unitarity_pass,true" in text


def test_validate_tabulated_model(tmp_path):
    table = tmp_path / "mirror.csv"
    _write_table_csv(table)
    out = tmp_path / "report.csv"
    # spline interpolation is unitary only to O(h^4) between knots
    code = main([
        "validate", "--model", "table", "--file", str(table),
        "--grid", "-50:50:2001", "--tol", "1e-3", "--out", str(out),
    ])
    assert code == 0
    bad = tmp_path / "bad.csv"
    _write_table_csv(bad, scale_r=1.3)
    code = main([
        "validate", "--model", "table", "--file", str(bad),
        "--grid", "-50:50:2001", "--tol", "1e-3", "--out", str(out),
    ])
    assert code == 1


def test_susceptibility_table_values(tmp_path):
    out = tmp_path / "chi.csv"
    code = main([
        "susceptibility", "--model", "perfect", "--grid", "-2:2:41", "--out", str(out),
    ])
    assert code == 0
    rows = _read_csv_rows(out)
    re, im = rows[1.0]
    assert abs(re) < 1e-12
    assert np.isclose(im, 1.0 / (6.0 * np.pi), rtol=1e-10)
    # reality: chi(-w) = conj chi(w)
    assert rows[-1.0][0] == re and rows[-1.0][1] == -im


def test_noise_thermal_balance_comments(tmp_path):
    out = tmp_path / "noise.csv"
    code = main([
        "noise", "--state", "thermal", "--temp", "1.0",
        "--grid", "-2:2:9", "--out", str(out),
    ])
    assert code == 0
    balance = [l for l in out.read_text().splitlines() if l.startswith("# balance")]
    assert len(balance) == 4
    for line in balance:
        fields = dict(part.split("=") for part in line.split()[2:])
        assert np.isclose(float(fields["ratio"]), float(fields["boltzmann"]), rtol=1e-8)


def test_fdt_passes_for_vacuum(tmp_path):
    out = tmp_path / "fdt.csv"
    code = main(["fdt", "--grid", "-2:2:11", "--out", str(out)])
    assert code == 0
    assert "# passed true" in out.read_text()


def test_fdt_fails_for_broken_table(tmp_path):
    table = tmp_path / "bad.csv"
    _write_table_csv(table, scale_r=1.3)
    out = tmp_path / "fdt.csv"
    code = main([
        "fdt", "--model", "table", "--file", str(table),
        "--grid", "-2:2:11", "--out", str(out),
    ])
    assert code == 1
    assert "# passed false" in out.read_text()


def test_causality_injected_spectra(tmp_path):
    out = tmp_path / "causality.json"
    code = main([
        "causality", "--inject", "exponential", "--format", "json", "--out", str(out),
    ])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["report"]["mode"] == "direct"
    assert doc["report"]["negative_time_fraction"] < 1e-5
    code = main([
        "causality", "--inject", "cubic", "--format", "json", "--out", str(out),
    ])
    assert code == 1
    doc = json.loads(out.read_text())
    assert doc["report"]["passed"] is False


def test_squeeze_json_payload(tmp_path):
    out = tmp_path / "squeeze.json"
    code = main(["squeeze", "--osc-freq", "1.0", "--osc-amp", "1.0", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    lines = doc["data"]["lines"]
    assert len(lines) == 66
    for entry in lines:
        assert entry["same_sign"] is True
        assert np.isclose(abs(entry["sum"]), 2.0)
        assert np.shape(entry["matrix"]) == (2, 2, 2)
    assert doc["data"]["line_strength_plus"] > 0.0
    assert np.isclose(
        doc["data"]["line_strength_plus"], doc["data"]["line_strength_minus"], rtol=1e-12
    )


def test_exit_codes_for_input_errors(tmp_path, capsys):
    assert main(["susceptibility", "--grid", "1:2"]) == 2
    assert main(["validate", "--model", "table", "--file", str(tmp_path / "missing.csv")]) == 2
    assert main(["squeeze", "--format", "csv"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_exit_code_for_non_convergence(tmp_path, monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise NonConvergenceError(
            "susceptibility at omega=2.0: error 1e-3 above tolerance",
            best=0.0j,
            error_estimate=1e-3,
        )

    monkeypatch.setattr("vacmirror.cli.susceptibility_grid", boom)
    code = main(["susceptibility", "--grid", "-2:2:5", "--out", str(tmp_path / "x.csv")])
    assert code == 3
    assert "omega=2.0" in capsys.readouterr().err


def test_runs_are_deterministic(tmp_path):
    out = tmp_path / "chi.csv"
    argv = ["susceptibility", "--grid", "-2:2:21", "--out", str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("omega-c = 2.0\ngrid = -1:1:5\n# comment\n")
    out = tmp_path / "chi.csv"
    code = main([
        "susceptibility", "--config", str(cfg), "--omega-c", "3.0", "--out", str(out),
    ])
    assert code == 0
    header = [l for l in out.read_text().splitlines() if l.startswith("# config")][0]
    resolved = json.loads(header[len("# config "):])
    assert resolved["omega_c"] == 3.0
    assert resolved["grid"] == "-1:1:5"
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    assert main(["susceptibility", "--config", str(bad), "--out", str(out)]) == 2


def test_csv_and_json_agree(tmp_path):
    csv_out = tmp_path / "chi.csv"
    json_out = tmp_path / "chi.json"
    base = ["susceptibility", "--grid", "-1:1:11"]
    assert main(base + ["--out", str(csv_out)]) == 0
    assert main(base + ["--format", "json", "--out", str(json_out)]) == 0
    rows = _read_csv_rows(csv_out)
    doc = json.loads(json_out.read_text())
    data = doc["data"]
    for k, w in enumerate(data["omega"]):
        assert rows[w] == [data["re_chi"][k], data["im_chi"][k]]
