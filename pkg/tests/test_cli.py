import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from quadomain.cli import main, parse_sweep
from quadomain.emitters import fmt_float, to_csv, to_json, to_svg
from quadomain.errors import ValidationError

SVG_NS = "{http://www.w3.org/2000/svg}"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_csv(capsys):
    code, out, _ = run(["trace", "--a", "0.3", "--samples", "256"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "theta,re_zeta,im_zeta,abs_df"
    assert len(lines) == 257
    assert float(lines[1].split(",")[1]) > 1.0


def test_trace_svg_and_sidecar(tmp_path, capsys):
    out = tmp_path / "curve.svg"
    code, _, _ = run(["trace", "--a", "0.3", "--c", "1", "--samples", "4096",
                      "--format", "svg", "--out", str(out)], capsys)
    assert code == 0
    root = ET.parse(out).getroot()
    paths = root.findall(f"{SVG_NS}path")
    assert len(paths) == 1 and paths[0].get("d").endswith("Z")
    assert (tmp_path / "curve.csv").read_text().startswith("theta,")


def test_trace_sweep_svg(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code, _, _ = run(["trace", "--sweep", "a=0.1:0.5:0.2", "--samples", "1024",
                      "--format", "svg", "--out", str(out)], capsys)
    assert code == 0
    assert len(ET.parse(out).getroot().findall(f"{SVG_NS}path")) == 3


def test_trace_sweep_parallel_matches_serial(capsys):
    base = ["trace", "--sweep", "a=0.1:0.3:0.1", "--samples", "256"]
    _, serial, _ = run(base, capsys)
    _, par, _ = run(base + ["--jobs", "2"], capsys)
    assert serial == par
    assert serial.split("\n")[0] == "a,theta,re_zeta,im_zeta,abs_df"


def test_deterministic(capsys):
    argv = ["quadrature", "--a", "0.3", "--c", "1"]
    _, one, _ = run(argv, capsys)
    _, two, _ = run(argv, capsys)
    assert one == two


def test_quadrature_json(capsys):
    code, out, _ = run(["quadrature", "--a", "0.3", "--c", "1"], capsys)
    assert code == 0
    rec = json.loads(out)
    d = rec["direct"]
    assert d["a0"] > 0 and d["a1"] > 0 and d["quadrature"]
    assert d["residual_orders"] == [3, 4, 5, 6, 7, 8]
    assert rec["agreement"]["a0"] < 1e-6 and rec["agreement"]["a1"] < 1e-6


def test_quadrature_csv_sweep(capsys):
    code, out, _ = run(["quadrature", "--sweep", "c=1:2:1", "--format", "csv"], capsys)
    rows = out.strip().split("\n")
    assert code == 0 and len(rows) == 3
    a0 = [float(r.split(",")[2]) for r in rows[1:]]
    assert abs(a0[1] / a0[0] - 16) < 1e-10


def test_monodromy(capsys):
    code, out, _ = run(["monodromy", "--a", "0.5", "--ladder", "2"], capsys)
    rec = json.loads(out)
    assert code == 0 and rec["final_offset_multiple_of_sqrtG"] == 6
    assert rec["sheets_visited"][0] == [0, 1]
    code, out, _ = run(["monodromy", "--path", "g1,g1"], capsys)
    assert json.loads(out)["final_offset_multiple_of_sqrtG"] == 0


def test_growth_csv(capsys):
    code, out, _ = run(["growth", "--a", "0.5", "--q", "-0.5", "--dt", "0.01", "--steps", "3"], capsys)
    lines = out.strip().split("\n")
    assert code == 0 and lines[0] == "t,a,C,a0,a1,min_abs_df,cusp_flag" and len(lines) == 5


def test_growth_pk(capsys):
    code, out, _ = run(["growth", "--family", "pk", "--a", "0.2", "--b", "1", "--q", "-0.5",
                        "--dt", "0.5", "--steps", "10"], capsys)
    lines = out.strip().split("\n")
    assert code == 0 and lines[-1].endswith(",1")


def test_growth_svg(tmp_path, capsys):
    out = tmp_path / "g.svg"
    code, _, _ = run(["growth", "--steps", "12", "--format", "svg", "--out", str(out)], capsys)
    assert code == 0 and len(ET.parse(out).getroot().findall(f"{SVG_NS}path")) == 3


def test_cusp_reports_numerical_failure(capsys):
    code, _, err = run(["cusp"], capsys)
    assert code == 2 and "does not vanish" in err


@pytest.mark.parametrize("kind", ["neumann", "limacon", "cardioid", "ball"])
def test_examples(kind, tmp_path, capsys):
    out = tmp_path / f"{kind}.svg"
    code, _, _ = run(["examples", kind, "--out", str(out)], capsys)
    assert code == 0
    ET.parse(out)


def test_examples_neumann_family(tmp_path, capsys):
    out = tmp_path / "fig1.svg"
    code, _, _ = run(["examples", "neumann", "--sweep", "param=0.5:2:0.5", "--out", str(out)], capsys)
    assert code == 0 and len(ET.parse(out).getroot().findall(f"{SVG_NS}path")) == 4


def test_examples_json(capsys):
    code, out, _ = run(["examples", "neumann", "--param", "1", "--format", "json"], capsys)
    rec = json.loads(out)
    assert code == 0 and abs(rec["quadrature"]["weights"][0] - 1.5 * np.pi) < 1e-12


def test_elliptic(capsys):
    code, out, _ = run(["elliptic", "--n", "0", "--m", "0.5", "--a", "0.3", "--w", "0.5,-3+1j"], capsys)
    rec = json.loads(out)
    assert code == 0 and abs(rec["Pi"] - rec["K_agm"]) < 1e-12
    assert all(p["abs_diff"] < 1e-8 for p in rec["xi_check"])


@pytest.mark.parametrize("argv", [
    ["trace", "--samples", "100"],
    ["trace", "--samples", "131072"],
    ["trace", "--bogus"],
    ["trace", "--a", "1.5"],
    ["examples", "limacon", "--param", "0.7"],
    ["trace", "--sweep", "a=0.1:0.3"],
    ["trace", "--sweep", "z=0.1:0.3:0.1"],
    ["quadrature", "--format", "svg"],
    ["monodromy", "--path", "g1,g9"],
    [],
])
def test_validation_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as e:
        sys.exit(main(argv))
    assert e.value.code == 1


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = run(["trace", "--samples", "256", "--out", str(blocker / "sub" / "o.csv")], capsys)
    assert code == 1 and "cannot write" in err


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\na = 0.5\nsamples = 256\n")
    _, out_cfg, _ = run(["trace", "--config", str(cfg)], capsys)
    _, out_ref, _ = run(["trace", "--a", "0.5", "--samples", "256"], capsys)
    assert out_cfg == out_ref
    _, out_flag, _ = run(["trace", "--config", str(cfg), "--a", "0.3"], capsys)
    _, out_ref3, _ = run(["trace", "--a", "0.3", "--samples", "256"], capsys)
    assert out_flag == out_ref3


def test_config_errors(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("a = 0.5\nnonsense line\n")
    code, _, err = run(["trace", "--config", str(cfg)], capsys)
    assert code == 1 and "bad.cfg:2" in err
    cfg.write_text("colour = red\n")
    code, _, err = run(["trace", "--config", str(cfg)], capsys)
    assert code == 1 and "unknown setting" in err


def test_out_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("QUADOMAIN_OUT_DIR", str(tmp_path))
    code, out, _ = run(["trace", "--samples", "256"], capsys)
    assert code == 0 and out == ""
    assert (tmp_path / "trace.csv").exists()
    code, _, _ = run(["trace", "--samples", "256", "--out", "x/y.csv"], capsys)
    assert (tmp_path / "x" / "y.csv").exists()


def test_parse_sweep():
    key, vals = parse_sweep("a=0.1:0.8:0.05")
    assert key == "a" and len(vals) == 15 and vals[-1] == 0.8
    with pytest.raises(ValidationError):
        parse_sweep("a=0.5:0.1:0.1")


def test_float_round_trip():
    for x in (np.pi, 1 / 3, 1e-300, -2.5e17, 0.1):
        assert float(fmt_float(x)) == x
    rec = json.loads(to_json({"x": np.pi, "v": [0.1, 0.2], "c": 1 + 2j, "b": True, "n": None}))
    assert rec["x"] == np.pi and rec["c"] == {"re": 1, "im": 2} and rec["b"] is True


def test_csv_and_svg_emitters():
    assert to_csv(["a", "b"], [[1, 0.5], [True, "s"]]) == "a,b\n1,0.5\n1,s\n"
    svg = to_svg([np.exp(2j * np.pi * np.arange(8) / 8)])
    root = ET.fromstring(svg.split("\n", 1)[1])
    vb = [float(v) for v in root.get("viewBox").split()]
    assert abs(vb[0] + 1.1) < 1e-12 and abs(vb[2] - 2.2) < 1e-12


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "quadomain", "trace", "--help"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "CSV columns" in out.stdout
