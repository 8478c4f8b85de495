"""CLI contract: config parsing, CSV output, sweeps, exit codes."""

import io

import numpy as np
import pytest

from vdwkit.cli import ConfigError, main, parse_config, run

FREESPACE_CFG = """\
command = freespace
l = 1.5
atom_a.a0 = 1e-4
atom_a.b0 = 3e-5
atom_b.a0 = 2e-4
atom_b.b0 = 1e-5
"""

SPHERE_CFG = """\
command = sphere
host.wpe = 3
host.wte = 1
host.ge = 0.001
sphere.radius_R = 1
r_a = 1.3
r_b = 1.3
theta = 1.0
atom_a.a0 = 1e-4
atom_b.b0 = 1e-4
"""


def run_to_rows(cfg_text, **kwargs):
    buf = io.StringIO()
    code = run(parse_config(cfg_text), stream=buf, **kwargs)
    assert code == 0
    return buf.getvalue().strip().splitlines()


class TestParseErrors:
    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError, match="line 2.*frobnicate"):
            parse_config("command = freespace\nfrobnicate = 3\n")

    def test_missing_equals_reports_line(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config("command = bulk\nbulk.l = 1\njunk line\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("command = freespace\nl = 1\nl = 2\n")

    def test_non_numeric_value(self):
        with pytest.raises(ConfigError, match="expects a number"):
            parse_config("command = freespace\nl = fast\n")

    def test_missing_command(self):
        with pytest.raises(ConfigError, match="command"):
            parse_config("l = 1\n")

    def test_missing_required_geometry_key(self):
        with pytest.raises(ConfigError, match="halfspace.z"):
            parse_config("command = halfspace\natom.a0 = 1\n")

    def test_theta_out_of_range(self):
        cfg = SPHERE_CFG.replace("theta = 1.0", "theta = 4.0")
        with pytest.raises(ConfigError, match="theta"):
            parse_config(cfg)

    def test_bad_sweep_variable(self):
        cfg = FREESPACE_CFG + ("sweep.variable = atom_a.a0\nsweep.start = 1\n"
                               "sweep.stop = 2\nsweep.count = 3\n")
        with pytest.raises(ConfigError, match="cannot sweep"):
            parse_config(cfg)

    def test_invalid_quadrature_spec(self):
        with pytest.raises(ConfigError, match="quadrature"):
            parse_config(FREESPACE_CFG + "quadrature.rel_tol = -1\n")

    def test_comments_and_blank_lines_ignored(self):
        cfg = "# header\n\n" + FREESPACE_CFG + "\n# trailing\n"
        assert parse_config(cfg).command == "freespace"


class TestSingleRuns:
    def test_freespace_csv_shape(self):
        rows = run_to_rows(FREESPACE_CFG)
        assert rows[0] == "l,u_ee,u_em,u_me,u_mm,total,err_estimate"
        assert len(rows) == 2
        vals = [float(x) for x in rows[1].split(",")]
        assert vals[0] == 1.5 and vals[1] < 0.0 and vals[2] > 0.0

    def test_halfspace_csv_shape(self):
        cfg = ("command = halfspace\nhalfspace.z = 0.5\nwall.wpe = 2\n"
               "wall.wte = 1\natom.a0 = 1e-3\n")
        rows = run_to_rows(cfg)
        assert rows[0] == "z,u_e,u_m,total,err_estimate"
        vals = [float(x) for x in rows[1].split(",")]
        assert vals[1] < 0.0 and vals[2] == 0.0

    def test_sphere_csv_shape(self):
        rows = run_to_rows(SPHERE_CFG)
        assert rows[0].startswith("theta,u_ee_0,u_em_0")
        vals = [float(x) for x in rows[1].split(",")]
        assert len(vals) == 9 and np.all(np.isfinite(vals))

    def test_bulk_local_field_toggle_changes_result(self):
        base = ("command = bulk\nbulk.l = 1.0\nhost.wpe = 2\nhost.wte = 1\n"
                "atom_a.a0 = 1\natom_b.a0 = 1\n")
        with_lf = float(run_to_rows(base)[1].split(",")[1])
        without = float(run_to_rows(base + "lf.enabled = false\n")[1].split(",")[1])
        assert with_lf != without

    def test_output_file(self, tmp_path):
        out = tmp_path / "rows.csv"
        cfg = parse_config(FREESPACE_CFG + f"output = {out}\n")
        assert run(cfg) == 0
        assert out.read_text().startswith("l,u_ee")


class TestSweeps:
    CFG = (FREESPACE_CFG.replace("l = 1.5\n", "")
           + "sweep.variable = l\nsweep.start = 0.001\nsweep.stop = 0.01\n"
           + "sweep.count = 20\nsweep.spacing = log\n")

    def test_sweep_rows_and_slope(self):
        rows = run_to_rows(self.CFG)
        assert len(rows) == 21
        data = np.array([[float(x) for x in r.split(",")] for r in rows[1:]])
        ls, u_ee = data[:, 0], np.abs(data[:, 1])
        slope = np.polyfit(np.log(ls), np.log(u_ee), 1)[0]
        assert slope == pytest.approx(-6.0, abs=0.05)

    def test_sweep_command_indirection(self):
        cfg = self.CFG.replace("command = freespace",
                               "command = sweep\nsweep.command = freespace")
        assert run_to_rows(cfg) == run_to_rows(self.CFG)

    def test_single_thread_determinism(self):
        assert run_to_rows(self.CFG) == run_to_rows(self.CFG)

    def test_parallel_matches_serial(self):
        serial = run_to_rows(self.CFG)
        parallel = run_to_rows(self.CFG, threads=2)
        assert parallel[0] == serial[0]
        for s, p in zip(serial[1:], parallel[1:]):
            sv = np.array([float(x) for x in s.split(",")])
            pv = np.array([float(x) for x in p.split(",")])
            assert np.allclose(sv, pv, rtol=1e-12, atol=0.0)

    def test_sphere_theta_sweep(self):
        cfg = (SPHERE_CFG.replace("theta = 1.0\n", "")
               + "sweep.variable = theta\nsweep.start = 0.5\nsweep.stop = 2.5\n"
               + "sweep.count = 3\nquadrature.rel_tol = 1e-7\n")
        rows = run_to_rows(cfg)
        assert len(rows) == 4
        thetas = [float(r.split(",")[0]) for r in rows[1:]]
        assert thetas == pytest.approx([0.5, 1.5, 2.5])


class TestMainEntry:
    def test_selftest_passes(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 6 and "FAIL" not in out

    def test_missing_config_is_exit_1(self, capsys):
        assert main(["freespace"]) == 1
        assert "code=1" in capsys.readouterr().err

    def test_unreadable_config_is_exit_1(self, tmp_path, capsys):
        assert main(["freespace", "--config", str(tmp_path / "nope.cfg")]) == 1
        assert "code=1" in capsys.readouterr().err

    def test_command_mismatch_is_exit_1(self, tmp_path, capsys):
        cfg = tmp_path / "a.cfg"
        cfg.write_text(FREESPACE_CFG)
        assert main(["bulk", "--config", str(cfg)]) == 1
        assert "kind=config" in capsys.readouterr().err

    def test_run_and_tol_override(self, tmp_path, capsys):
        cfg = tmp_path / "a.cfg"
        cfg.write_text(FREESPACE_CFG)
        assert main(["freespace", "--config", str(cfg), "--tol", "1e-6"]) == 0
        assert capsys.readouterr().out.startswith("l,u_ee")

    def test_out_flag_writes_file(self, tmp_path):
        cfg = tmp_path / "a.cfg"
        cfg.write_text(FREESPACE_CFG)
        out = tmp_path / "o.csv"
        assert main(["freespace", "--config", str(cfg), "--out", str(out)]) == 0
        assert out.read_text().startswith("l,u_ee")
