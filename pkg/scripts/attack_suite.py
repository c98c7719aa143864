"""Run every attack on small configurations and print one summary line each."""
import argparse

import numpy as np

from y00lab.attacks import (
    EveChannelModel,
    ciphertext_only_data_bound,
    indirect_half_plane_attack,
    known_plaintext_attack,
    lo_ko_feasibility,
    modified_lo_ko_attack,
)
from y00lab.lfsr import LfsrConfig
from y00lab.protocol import Constellation, RandomizationConfig


def show(r):
    sim = "" if r.simulated_error_rate is None else f" sim={r.simulated_error_rate:.4f}"
    bound = "" if r.bound_error_probability is None else f" bound={r.bound_error_probability:.4g}"
    print(f"{r.attack_name:<22}{bound}{sim} recovered={r.key_recovered} log2W={np.log2(r.workload_estimate):.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=50)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    ring = Constellation.psk(16, 100.0)
    show(ciphertext_only_data_bound(ring, RandomizationConfig()))
    show(ciphertext_only_data_bound(ring, RandomizationConfig(osk_enabled=True)))
    lf = LfsrConfig.primitive(10, 0x2A5)
    show(indirect_half_plane_attack(ring, lf, 48, rng, RandomizationConfig(), EveChannelModel()))
    show(known_plaintext_attack(Constellation.psk(32, 0.5), LfsrConfig.primitive(12, 1), 24, rng, trials=args.trials))
    show(known_plaintext_attack(Constellation.psk(32, 0.5), LfsrConfig.primitive(12, 1), 24, rng,
                                trials=args.trials, receiver="noiseless"))
    show(modified_lo_ko_attack(ring, LfsrConfig.primitive(8, 1), 0.9, 8, rng, trials=args.trials))
    show(lo_ko_feasibility(None, 128, copies_available=100))


if __name__ == "__main__":
    main()
