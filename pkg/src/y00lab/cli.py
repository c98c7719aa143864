"""Command-line front end: ``y00lab {bounds,attack,keyrate,fig2,design} --config FILE``.

Every run writes one CSV with a fixed header and a ``#`` metadata trailer.
Exit codes: 0 success, 2 configuration error, 3 runtime or numerical error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np
from scipy import stats

from . import __version__
from .attacks import (
    AttackReport,
    EveChannelModel,
    SearchRefused,
    binomial_stderr,
    ciphertext_only_data_bound,
    ciphertext_only_key_bound,
    combined_channel_attack,
    indirect_half_plane_attack,
    key_reuse_xor_test,
    known_plaintext_attack,
    lo_ko_feasibility,
    modified_lo_ko_attack,
    unambiguous_sequence_bound,
)
from .detection import (
    BinaryDiscriminationProblem,
    design_basis_count,
    helstrom_error,
    neighbor_error,
    neighbor_t0,
    photon_counts,
)
from .keyrate import key_rate, loss_margin, rate_band_flag
from .protocol import (
    Constellation,
    RandomizationConfig,
    bob_demodulate,
    conditional_mixtures,
    encrypt_sequence,
)
from .scenario import KEYLESS_ATTACKS, Scenario, ScenarioError, load_scenario

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3

ATTACK_COLUMNS = [
    "attack_name",
    "bound_error_probability",
    "simulated_error_rate",
    "stderr",
    "key_recovered",
    "success_count",
    "candidate_set_size",
    "trials",
    "workload_estimate",
    "notes",
    "details",
]
FIG2_COLUMNS = [
    "amplitude",
    "bob_ber",
    "bob_stderr",
    "eve_ber_no_osk",
    "eve_no_osk_stderr",
    "eve_ber_osk",
    "eve_osk_stderr",
]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return "; ".join(map(str, v))
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True, default=_json_default)
    return str(v)


def _json_default(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, int):
        return str(v)
    raise TypeError(type(v))


def render_csv(columns, rows, scenario: Scenario, command: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    buf.write(f"# y00lab {__version__}\n")
    buf.write(f"# command = {command}\n")
    for key, text in scenario.items():
        buf.write(f"# {key} = {text}\n")
    return buf.getvalue()


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


# ---------------------------------------------------------------- runners


def eve_model(s: Scenario) -> EveChannelModel:
    return EveChannelModel(
        tap_position=s.eve_tap,
        kappa_to_bob=s.channel_kappa,
        receiver=s.eve_receiver,
        knows_axis=s.eve_knows_axis,
    )


def run_bounds(s: Scenario):
    cfg, rnd = s.constellation(), s.randomization()
    rows = [{"quantity": "data_bit_helstrom", "value": ciphertext_only_data_bound(cfg, rnd).bound_error_probability}]
    r0, r1 = conditional_mixtures(cfg, rnd, "indirect")
    rows.append({"quantity": "indirect_helstrom", "value": helstrom_error(BinaryDiscriminationProblem(r0, r1))})
    if cfg.scheme == "psk":
        rows.append({"quantity": "basis_srm_error", "value": ciphertext_only_key_bound(cfg).bound_error_probability})
        rows.append({"quantity": "neighbor_error", "value": neighbor_error(cfg.mean_photon, cfg.m_bases)})
    return ["quantity", "value"], rows


def run_attack(s: Scenario, rng: np.random.Generator, threads: int = 1) -> AttackReport:
    cfg, rnd = s.constellation(), s.randomization()
    lf = None if s.attack in KEYLESS_ATTACKS else s.lfsr()
    eve = eve_model(s)
    kappa = s.channel_kappa
    match s.attack:
        case "ciphertext_data":
            return ciphertext_only_data_bound(cfg, rnd)
        case "ciphertext_key":
            return ciphertext_only_key_bound(cfg)
        case "indirect":
            return indirect_half_plane_attack(cfg, lf, s.n_bits, rng, rnd, eve, exhaustive=s.exhaustive_search)
        case "known_plaintext":
            receiver = "noiseless" if s.eve_receiver == "noiseless" else "heterodyne"
            return known_plaintext_attack(
                cfg,
                lf,
                s.plaintext_len or 2 * s.lfsr_length,
                rng,
                trials=s.trials,
                receiver=receiver,
                injected_error=s.injected_error,
                rnd=rnd,
                threads=threads,
            )
        case "lo_ko":
            return lo_ko_feasibility(kappa, s.lfsr_length)
        case "modified_lo_ko":
            return modified_lo_ko_attack(
                cfg,
                lf,
                kappa,
                s.lfsr_length,
                rng,
                trials=s.trials,
                plaintext_len=s.plaintext_len,
                split_mode=s.split_mode,
                n_copies=s.n_copies,
                threads=threads,
            )
        case "unambiguous":
            return unambiguous_sequence_bound(cfg, lf, s.lfsr_length, s.seq_len, rnd=rnd)
        case "combined":
            return combined_channel_attack(cfg, lf, rnd, s.n_bits, rng, eve)
        case "key_reuse":
            return key_reuse_xor_test(cfg, lf, rng, s.n_bits, rnd, eve)
    raise ScenarioError(f"unknown attack {s.attack!r}")


def run_keyrate(s: Scenario):
    cfg, rnd = s.constellation(), s.randomization()
    rep = key_rate(cfg, rnd, s.channel_kappa, s.penalty)
    margin = loss_margin(cfg, rnd, s.penalty, s.resolution_db)
    row = {
        "kappa": rep.kappa,
        "loss_db": -20 * math.log10(rep.kappa) + 0.0,
        "chi_bob": rep.chi_bob,
        "chi_eve": rep.chi_eve,
        "seed_key_penalty": rep.seed_key_penalty,
        "rate": rep.rate,
        "loss_margin_db": margin,
        "deviation_flag": rate_band_flag(margin) or "",
    }
    return list(row), [row]


def run_design(s: Scenario):
    if s.scheme != "psk":
        raise ScenarioError("the basis-count designer needs a PSK scenario")
    n = s.mean_photon
    m_design = design_basis_count(n, s.target_error)
    row = {
        "mean_photon": n,
        "target_error": s.target_error,
        "design_m_bases": m_design,
        "neighbor_error_at_design": neighbor_error(n, m_design),
        "m_bases": s.m_bases,
        "t0": neighbor_t0(n, s.m_bases),
        "neighbor_error": neighbor_error(n, s.m_bases),
        # same threshold measured in heterodyne quadrature standard deviations
        "neighbor_error_heterodyne_units": float(stats.norm.sf(math.sqrt(2) * neighbor_t0(n, s.m_bases))),
    }
    return list(row), [row]


def eve_imdd_bits(counts: np.ndarray, cfg: Constellation, efficiency: float) -> np.ndarray:
    """Unkeyed Eve: ML level from the photon count, then the un-keyed bit rule (upper half = 1)."""
    lam = efficiency * np.abs(cfg.states()) ** 2
    logl = stats.poisson.logpmf(counts[:, None], lam[None, :])
    level = np.argmax(logl, axis=1)
    return (level >= cfg.m_bases).astype(np.uint8)


def fig2_experiment(s: Scenario, threads: int = 1):
    """Bob vs Eve bit-error rates over an IMDD amplitude sweep, with and without OSK."""
    if s.scheme != "imdd":
        raise ScenarioError("fig2 needs an IMDD scenario")
    lf = s.lfsr()
    plain = RandomizationConfig(numbering_flip_enabled=s.numbering_flip)
    osk = RandomizationConfig(osk_enabled=True, numbering_flip_enabled=s.numbering_flip)
    eve = eve_model(s)
    kappa = s.channel_kappa
    streams = np.random.default_rng(s.rng_seed).spawn(len(s.amplitudes))

    def point(amp, rng):
        cfg = Constellation.imdd(s.m_bases, amp)
        x = rng.integers(0, 2, s.n_bits, dtype=np.uint8)
        tr = bob_demodulate(encrypt_sequence(x, lf, cfg, plain), lf, cfg, plain, kappa, rng, s.efficiency)
        bers = [tr.bob_ber]
        for rnd in (plain, osk):
            t = encrypt_sequence(x, lf, cfg, rnd)
            counts = photon_counts(eve.eve_kappa * t.transmitted_states, s.efficiency, rng)
            bers.append(float(np.mean(eve_imdd_bits(counts, cfg, s.efficiency) != x)))
        n = s.n_bits
        return {
            "amplitude": float(amp),
            "bob_ber": bers[0],
            "bob_stderr": binomial_stderr(bers[0], n),
            "eve_ber_no_osk": bers[1],
            "eve_no_osk_stderr": binomial_stderr(bers[1], n),
            "eve_ber_osk": bers[2],
            "eve_osk_stderr": binomial_stderr(bers[2], n),
        }

    rows = [point(a, r) for a, r in zip(s.amplitudes, streams)]
    return FIG2_COLUMNS, rows


def run_scenario(s: Scenario, command: str, out_dir: str | None = None, threads: int = 1) -> Path:
    """Run one subcommand and write its CSV; returns the output path."""
    out = Path(out_dir if out_dir is not None else s.output_dir)
    if command == "attack":
        rep = run_attack(s, np.random.default_rng(s.rng_seed), threads)
        columns, rows = ATTACK_COLUMNS, [rep.as_dict()]
        name = f"attack_{s.attack}.csv"
    elif command == "bounds":
        (columns, rows), name = run_bounds(s), "bounds.csv"
    elif command == "keyrate":
        (columns, rows), name = run_keyrate(s), "keyrate.csv"
    elif command == "design":
        (columns, rows), name = run_design(s), "design.csv"
    elif command == "fig2":
        (columns, rows), name = fig2_experiment(s, threads), "fig2.csv"
    else:
        raise ScenarioError(f"unknown command {command!r}")
    path = out / name
    write_atomic(path, render_csv(columns, rows, s, command))
    return path


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="y00lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"y00lab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("bounds", "optimal-receiver error bounds for the configured constellation"),
        ("attack", "run the configured attack and write its report"),
        ("keyrate", "Holevo key rate at the configured loss, plus the loss margin"),
        ("fig2", "IMDD Bob/Eve error-rate sweep"),
        ("design", "basis count needed for a target neighbour error"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, help="scenario file (key = value lines)")
        sp.add_argument("--out", help="output directory (overrides output_dir)")
        sp.add_argument("--seed", type=int, help="rng seed (overrides rng_seed)")
        sp.add_argument("--threads", type=int, default=1, help="worker threads for independent trials")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        s = load_scenario(args.config)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ScenarioError("--seed must be an unsigned 64-bit integer")
            s = s.with_seed(args.seed)
        if args.threads < 1:
            raise ScenarioError("--threads must be >= 1")
    except (OSError, ScenarioError) as exc:
        print(f"y00lab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        path = run_scenario(s, args.command, args.out, args.threads)
    except (ScenarioError, SearchRefused) as exc:
        print(f"y00lab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # numerical or module failure
        print(f"y00lab: runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
