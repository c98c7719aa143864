import csv
import io
import math
from pathlib import Path

import pytest

from y00lab import cli
from y00lab.cli import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, fig2_experiment, main, run_scenario
from y00lab.scenario import parse_scenario

ROOT = Path(__file__).resolve().parents[1]


def write(tmp_path, text, name="s.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def read_rows(path):
    text = Path(path).read_text()
    body = "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body))), text


def test_bounds_on_osk_config(tmp_path):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 8\nmean_photon = 4\nosk = true\n")
    assert main(["bounds", "--config", cfg, "--out", str(tmp_path)]) == EXIT_OK
    rows, text = read_rows(tmp_path / "bounds.csv")
    assert rows[0]["quantity"] == "data_bit_helstrom" and float(rows[0]["value"]) == 0.5
    assert "# y00lab 0.1.0" in text and "# osk = true" in text


def test_outputs_byte_identical(tmp_path):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 8\nmean_photon = 2\nlfsr_length = 10\nattack = known_plaintext\ntrials = 10\n")
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["attack", "--config", cfg, "--out", str(a), "--seed", "5"]) == EXIT_OK
    assert main(["attack", "--config", cfg, "--out", str(b), "--seed", "5", "--threads", "3"]) == EXIT_OK
    assert (a / "attack_known_plaintext.csv").read_bytes() == (b / "attack_known_plaintext.csv").read_bytes()
    c = tmp_path / "c"
    main(["attack", "--config", cfg, "--out", str(c), "--seed", "6"])
    assert (a / "attack_known_plaintext.csv").read_bytes() != (c / "attack_known_plaintext.csv").read_bytes()


def test_refusal_is_config_error(tmp_path, capsys):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 4\nmean_photon = 1\nlfsr_length = 30\nattack = known_plaintext\n")
    assert main(["attack", "--config", cfg, "--out", str(tmp_path)]) == EXIT_CONFIG
    assert "refused" in capsys.readouterr().err
    assert not list(tmp_path.glob("*.csv"))


def test_bad_config_line_reported(tmp_path, capsys):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 4\nmean_photon = 1\nkappa = 1.5\n")
    assert main(["keyrate", "--config", cfg]) == EXIT_CONFIG
    assert "line 4" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["bounds", "--config", str(tmp_path / "nope.cfg")]) == EXIT_CONFIG


def test_runtime_error_leaves_no_files(tmp_path, monkeypatch):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 4\nmean_photon = 1\n")

    def boom(*_):
        raise ArithmeticError("synthetic failure")

    monkeypatch.setattr(cli, "render_csv", boom)
    out = tmp_path / "out"
    assert main(["bounds", "--config", cfg, "--out", str(out)]) == EXIT_RUNTIME
    assert not out.exists() or not any(out.iterdir())


def test_atomic_write_cleans_up(tmp_path, monkeypatch):
    def fail_replace(*_):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", fail_replace)
    with pytest.raises(OSError):
        cli.write_atomic(tmp_path / "x.csv", "a,b\n")
    assert list(tmp_path.iterdir()) == []


def test_keyrate_and_design(tmp_path):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 10000\nmean_photon = 100000\ntarget_error = 0.48\n")
    assert main(["design", "--config", cfg, "--out", str(tmp_path)]) == EXIT_OK
    rows, _ = read_rows(tmp_path / "design.csv")
    assert int(rows[0]["design_m_bases"]) in (9904, 9905)
    assert float(rows[0]["neighbor_error"]) == pytest.approx(0.4802, abs=5e-4)


def test_keyrate_osk(tmp_path):
    cfg = write(tmp_path, "scheme = psk\nm_bases = 4\nmean_photon = 1000\nosk = true\n")
    assert main(["keyrate", "--config", cfg, "--out", str(tmp_path)]) == EXIT_OK
    rows, _ = read_rows(tmp_path / "keyrate.csv")
    assert float(rows[0]["chi_eve"]) == 0
    assert float(rows[0]["loss_margin_db"]) > 40


def test_fig2_small_sweep():
    s = parse_scenario("scheme = imdd\nm_bases = 2\nmax_amplitude = 5\nn_bits = 20000\namplitudes = 0, 4, 8\nrng_seed = 1\n")
    cols, rows = fig2_experiment(s)
    assert cols[:4] == ["amplitude", "bob_ber", "bob_stderr", "eve_ber_no_osk"]
    zero = rows[0]
    for key in ("bob_ber", "eve_ber_no_osk", "eve_ber_osk"):
        assert abs(zero[key] - 0.5) < 3 * 0.5 / math.sqrt(20000)
    for r in rows[1:]:
        assert r["bob_ber"] < r["eve_ber_no_osk"]
        assert abs(r["eve_ber_osk"] - 0.5) < 3 * r["eve_osk_stderr"] + 1e-12


def test_fig2_rejects_psk():
    s = parse_scenario("scheme = psk\nm_bases = 2\nmean_photon = 1\n")
    with pytest.raises(ValueError):
        fig2_experiment(s)


@pytest.mark.parametrize("name", ["osk_bounds", "indirect", "lo_ko", "design"])
def test_shipped_scenarios_run(tmp_path, name):
    s = parse_scenario((ROOT / "scenarios" / f"{name}.cfg").read_text())
    command = {"osk_bounds": "bounds", "design": "design"}.get(name, "attack")
    path = run_scenario(s, command, str(tmp_path))
    assert path.exists()
