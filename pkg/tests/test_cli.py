"""End-to-end runs of the command line entry point, checking exit codes."""

import json

import pytest

from ringlp import cli
from ringlp.simplex import SimplexError


@pytest.fixture
def toy_path(tmp_path):
    p = tmp_path / "toy.code"
    p.write_text("q=3\nn=3\nm=1\nk=2\n1 1 1\n")
    return str(p)


@pytest.fixture
def cycle_path(tmp_path):
    p = tmp_path / "cycle.code"
    p.write_text("q=3\nn=3\nm=3\n1 1 0\n0 1 1\n1 0 1\n")
    return str(p)


class TestUsageErrors:
    def test_no_arguments(self):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == cli.EXIT_USAGE

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == cli.EXIT_USAGE

    def test_decode_requires_code(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["decode", "1,1,1"])
        assert exc.value.code == cli.EXIT_USAGE

    def test_psk_needs_snr(self, toy_path, capsys):
        rc = cli.main(["decode", "--code", toy_path, "1,1,1"])
        assert rc == cli.EXIT_USAGE
        assert "snr-db" in capsys.readouterr().err

    def test_wrong_received_length(self, toy_path, capsys):
        rc = cli.main(["decode", "--code", toy_path, "--snr-db", "3", "1,1"])
        assert rc == cli.EXIT_USAGE
        assert "length" in capsys.readouterr().err


class TestDecode:
    def test_noiseless_psk_integral(self, toy_path, capsys):
        rc = cli.main(["decode", "--code", toy_path, "--snr-db", "3",
                       "1+0j, 1+0j, 1+0j"])
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "outcome: integral" in out
        assert "word: 0 0 0" in out
        assert "ml_certificate: yes" in out

    def test_qsc_fractional_with_pcw_json(self, cycle_path, capsys):
        rc = cli.main(["decode", "--code", cycle_path, "--scheme", "qsc",
                       "--eps", "0.4", "--pcw", "json", "1 1 1"])
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "outcome: fractional" in out
        payload = json.loads(out[out.index("{"):])
        assert payload["M"] == 2
        assert payload["matrix_representation"] == [[0, 1, 1], [0, 1, 1], [0, 1, 1]]
        assert float(payload["cost"]["float"]) < 0

    def test_shipped_code_by_name(self, capsys):
        rc = cli.main(["decode", "--code", "golay", "--scheme", "qsc",
                       "--eps", "0.05", "0 0 0 0 0 0 0 0 0 0 0"])
        assert rc == cli.EXIT_OK
        assert "word: 0 0 0 0 0 0 0 0 0 0 0" in capsys.readouterr().out

    def test_abort_exit_code(self, toy_path, monkeypatch, capsys):
        def boom(*a, **kw):
            raise SimplexError("iteration limit")
        monkeypatch.setattr(cli, "lp_decode", boom)
        rc = cli.main(["decode", "--code", toy_path, "--snr-db", "3", "1,1,1"])
        assert rc == cli.EXIT_ABORT
        assert "decode abort" in capsys.readouterr().err


class TestSweep:
    def test_config_file_with_override(self, toy_path, tmp_path, capsys):
        conf = tmp_path / "exp.conf"
        conf.write_text(f"code = {toy_path}\nsnr_db = 4.0\ntrials = 30\n"
                        f"seed = 3\nout = {tmp_path / 'a.csv'}\n")
        rc = cli.main(["sweep", "--config", str(conf), "--trials", "50"])
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "trials=50" in out
        assert "wrote" in out
        assert (tmp_path / "a.csv").exists()

    def test_flags_only(self, toy_path, tmp_path, capsys):
        rc = cli.main(["sweep", "--code", toy_path, "--snr-db", "5,7",
                       "--trials", "20", "--seed", "1",
                       "--out", str(tmp_path / "b.csv")])
        assert rc == cli.EXIT_OK
        assert len(open(tmp_path / "b.csv").read().splitlines()) == 3


class TestIndependence:
    def test_pass_exit_zero(self, toy_path, tmp_path, capsys):
        rc = cli.main(["independence", "--code", toy_path, "--snr-db", "3",
                       "--trials", "400", "--seed", "2",
                       "--out", str(tmp_path / "ind.csv")])
        assert rc == cli.EXIT_OK
        assert "overall: pass" in capsys.readouterr().out

    def test_fail_maps_to_check_exit(self, toy_path, monkeypatch, capsys):
        class Stub:
            passed = False
            def lines(self):
                return ["overall: FAIL"]
        monkeypatch.setattr(cli, "run_independence_test", lambda cfg: Stub())
        rc = cli.main(["independence", "--code", toy_path, "--snr-db", "3"])
        assert rc == cli.EXIT_CHECK_FAILED


class TestCurves:
    def test_no_sim(self, tmp_path, capsys):
        rc = cli.main(["curves", "--code", "golay", "--snr-db", "5,6,7",
                       "--out-dir", str(tmp_path / "cv"), "--no-sim"])
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "hard_decision:" in out
        assert "union_bound:" in out
        assert "lp_sim" not in out
        assert (tmp_path / "cv" / "hard_decision.csv").exists()

    def test_with_sim(self, toy_path, tmp_path, capsys):
        rc = cli.main(["curves", "--code", toy_path, "--snr-db", "4",
                       "--trials", "20", "--seed", "1",
                       "--out-dir", str(tmp_path / "cv2")])
        assert rc == cli.EXIT_OK
        assert (tmp_path / "cv2" / "lp_sim.csv").exists()


class TestVerify:
    def test_suites_pass(self, capsys):
        rc = cli.main(["verify"])
        assert rc == cli.EXIT_OK
        out = capsys.readouterr().out
        assert out.count("[pass]") == 4
        assert "FAIL" not in out
