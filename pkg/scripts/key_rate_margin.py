"""Holevo key rate versus channel loss, and the loss at which it reaches zero."""
import argparse

import numpy as np

from y00lab.keyrate import key_rate, loss_margin, rate_band_flag
from y00lab.protocol import Constellation, RandomizationConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-bases", type=int, default=100)
    ap.add_argument("--mean-photon", type=float, default=1000.0)
    ap.add_argument("--penalty", type=float, default=0.0)
    ap.add_argument("--osk", action="store_true")
    args = ap.parse_args()
    cfg = Constellation.psk(args.m_bases, args.mean_photon)
    rnd = RandomizationConfig(osk_enabled=args.osk)
    print(f"{'loss dB':>8} {'chi_bob':>9} {'chi_eve':>9} {'rate':>9}")
    for db in np.arange(0, 61, 5.0):
        r = key_rate(cfg, rnd, 10 ** (-db / 20), args.penalty)
        print(f"{db:8.1f} {r.chi_bob:9.5f} {r.chi_eve:9.5f} {r.rate:9.5f}")
    margin = loss_margin(cfg, rnd, args.penalty)
    print(f"loss margin {margin:.2f} dB")
    flag = rate_band_flag(margin)
    if flag:
        print(flag)


if __name__ == "__main__":
    main()
