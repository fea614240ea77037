import math

import pytest

from pyjama.cli import RunConfig, main, run

FIGURE_INI = """\
[covering]
rotations = 1; -3/5+4/5i
epsilon = 1/4
period = 1-2i
"""


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1, "stdout must carry exactly one summary line"
    return code, out[0]


def test_verify_covering_figure_pipeline(tmp_path, capsys):
    cfg = _write(tmp_path / "fig.ini", FIGURE_INI)
    out = tmp_path / "out"
    code, summary = _run(capsys, "verify-covering", "--config", cfg,
                         "--out", str(out))
    assert code == 1
    assert summary.startswith("command=verify-covering exit=1")
    assert "covered=false" in summary
    assert "area=5/4" in summary
    report = (out / "report.txt").read_text()
    assert report.splitlines()[0] == "pyjama-report v1"
    assert "obstruction a=1 b=1 m=2" in report
    svg = (out / "cover.svg").read_bytes()
    assert svg.startswith(b"<?xml")
    # five certified obstruction dots inside the norm-5 window
    assert svg.count(b'r="0.100000"') == 5
    # byte determinism
    out2 = tmp_path / "out2"
    code2 = main(["verify-covering", "--config", cfg, "--out", str(out2)])
    capsys.readouterr()
    assert code2 == 1
    assert (out2 / "cover.svg").read_bytes() == svg
    assert (out2 / "report.txt").read_text() == report


def test_verify_covering_no_svg_and_audit(tmp_path, capsys):
    cfg = _write(tmp_path / "fig.ini",
                 FIGURE_INI + "audit_points = 60\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "verify-covering", "--config", cfg,
                         "--out", str(out), "--no-svg", "--seed", "7")
    assert code == 1
    assert not (out / "cover.svg").exists()
    assert "audit_mismatches=0" in summary
    report = (out / "report.txt").read_text()
    assert "audit points=60 seed=7 mismatches=0" in report


def test_exit_two_writes_nothing(tmp_path, capsys):
    out = tmp_path / "out"
    bad = _write(tmp_path / "bad.ini",
                 "[covering]\nrotations = 1\nepsilon = abc\n")
    code, summary = _run(capsys, "verify-covering", "--config", bad,
                         "--out", str(out))
    assert code == 2
    assert "exit=2" in summary and "error=input" in summary
    assert not out.exists()
    # missing file
    code, summary = _run(capsys, "verify-covering", "--config",
                         str(tmp_path / "nope.ini"), "--out", str(out))
    assert code == 2
    assert not out.exists()
    # domain error: epsilon out of range
    bad2 = _write(tmp_path / "bad2.ini",
                  "[covering]\nrotations = 1\nepsilon = 1/2\n")
    code, _ = _run(capsys, "verify-covering", "--config", bad2,
                   "--out", str(out))
    assert code == 2
    assert not out.exists()


def test_classify_half_plus_half_i(tmp_path, capsys):
    cfg = _write(tmp_path / "c.ini", "[classify]\nq = 1/2+1/2i\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "classify", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    assert "classification=periodic" in summary
    assert "m=1" in summary
    report = (out / "report.txt").read_text()
    assert "torsion=true" in report
    assert "periodic=true" in report
    assert "m=1" in report


def test_classify_torsion_only(tmp_path, capsys):
    cfg = _write(tmp_path / "c.ini", "[classify]\nq = 1/5\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "classify", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    assert "classification=torsion_only" in summary
    assert "periodic=false" in summary
    assert " m=" not in summary  # no period exponent for aperiodic points


def test_density_semigroup(tmp_path, capsys):
    cfg = _write(tmp_path / "d.ini",
                 "[density]\neta = 1/1000000\ndelta = 1/10\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "density", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    assert "dense=true" in summary
    csv_text = (out / "density.csv").read_text()
    assert "max_gap" in csv_text
    assert "sample_0" in csv_text


def test_density_circle(tmp_path, capsys):
    gap_bound = repr(2 * math.pi / 20)
    cfg = _write(
        tmp_path / "d.ini",
        "[density]\nkind = circle\ntheta = -3/5+4/5i\nt = 1\nM = 200\n"
        f"gap_below = {gap_bound}\n",
    )
    out = tmp_path / "out"
    code, summary = _run(capsys, "density", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    assert "dense=true" in summary


def test_density_circle_rejects_torsion_rotation(tmp_path, capsys):
    cfg = _write(tmp_path / "d.ini",
                 "[density]\nkind = circle\ntheta = i\nt = 1\nM = 10\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "density", "--config", cfg, "--out",
                         str(out))
    assert code == 2
    assert not out.exists()


def test_orbit_sweep(tmp_path, capsys):
    cfg = _write(tmp_path / "o.ini",
                 "[orbit]\nw = 1\nm = 1\nsweep = 10\ngap_below = 0.9\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "orbit", "--config", cfg, "--out", str(out))
    assert code == 0
    assert "dense=true" in summary
    lines = (out / "orbit.csv").read_text().strip().splitlines()
    assert lines[0] == "r,s,value"
    assert len(lines) == 1 + 11 * 11


def test_orbit_gap_verdict_false(tmp_path, capsys):
    cfg = _write(tmp_path / "o.ini",
                 "[orbit]\nw = 1/4\nm = 1\nsweep = 10\ngap_below = 1/4\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "orbit", "--config", cfg, "--out", str(out))
    assert code == 1
    assert "dense=false" in summary
    assert (out / "report.txt").exists()  # exit 1 still writes artifacts


def test_obstructions_command(tmp_path, capsys):
    cfg = _write(tmp_path / "ob.ini",
                 "[obstructions]\nepsilon = 9/20\nm_max = 2\nperiod = 1-2i\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "obstructions", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    assert "count=1" in summary
    report = (out / "report.txt").read_text()
    assert "obstruction a=1 b=1 m=2 margin=1/2 verified=true" in report


def test_rationality_command(tmp_path, capsys):
    cfg = _write(tmp_path / "r.ini",
                 FIGURE_INI + "\n[rationality]\nrefinement = 2\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "rationality-check", "--config", cfg,
                         "--out", str(out))
    assert code == 0
    assert "within_bound=true" in summary
    report = (out / "report.txt").read_text()
    assert "polygon 0 distance_sq=" in report


def test_irrational_cover_scan(tmp_path, capsys):
    cfg = _write(
        tmp_path / "disk.ini",
        "[disk]\nepsilon = 0.45\nradius = 1.0\npitch = 0.05\n"
        "n_max = 1\nN_max = 0\n",
    )
    out = tmp_path / "out"
    code, summary = _run(capsys, "irrational-cover", "--config", cfg,
                         "--out", str(out))
    assert code == 0
    assert "certified=true" in summary and "n=1" in summary and "N=0" in summary
    report = (out / "report.txt").read_text()
    assert "scan n=1 N=0 rotations=3 certified=true" in report
    assert "certified_pair n=1 N=0" in report


def test_irrational_cover_failure(tmp_path, capsys):
    cfg = _write(
        tmp_path / "disk.ini",
        "[disk]\nepsilon = 0.2\nradius = 2.0\npitch = 0.05\n"
        "n_max = 1\nN_max = 0\n",
    )
    out = tmp_path / "out"
    code, summary = _run(capsys, "irrational-cover", "--config", cfg,
                         "--out", str(out))
    assert code == 1
    assert "certified=false" in summary


def test_approx_command(tmp_path, capsys):
    cfg = _write(tmp_path / "a.ini",
                 "[approx]\nz = 0\np = 5\ntarget = 1/5\ndelta = 1/10\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "approx", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    assert "verified=true" in summary
    report = (out / "report.txt").read_text()
    assert "residual_complex=" in report
    assert "residual_padic=" in report


def test_approx_three_way(tmp_path, capsys):
    cfg = _write(
        tmp_path / "a.ini",
        "[approx]\nz = 0\ntarget5 = 1/5\ntarget13 = 0\ndelta = 1/10\n",
    )
    out = tmp_path / "out"
    code, summary = _run(capsys, "approx", "--config", cfg, "--out",
                         str(out))
    assert code == 0
    report = (out / "report.txt").read_text()
    assert "residual_5=" in report and "residual_13=" in report


def test_closure_index_command(tmp_path, capsys):
    cfg = _write(tmp_path / "ci.ini", "[closure-index]\nu = 6\np = 5\n")
    out = tmp_path / "out"
    code, summary = _run(capsys, "closure-index", "--config", cfg, "--out",
                         str(out), "--precision", "4")
    assert code == 0
    assert "index=4" in summary
    report = (out / "report.txt").read_text()
    assert "index=4" in report


def test_run_config_reproducibility(tmp_path, capsys):
    cfg = _write(tmp_path / "fig.ini", FIGURE_INI + "audit_points = 40\n")
    outs = []
    for name in ("o1", "o2"):
        out = tmp_path / name
        config = RunConfig(command="verify-covering", input_path=cfg,
                           output_dir=str(out), seed=11, svg=True)
        assert run(config) == 1
        capsys.readouterr()
        outs.append((out / "report.txt").read_bytes()
                    + (out / "cover.svg").read_bytes())
    assert outs[0] == outs[1]


def test_unknown_command_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["not-a-command", "--config", "x.ini"])
    capsys.readouterr()
