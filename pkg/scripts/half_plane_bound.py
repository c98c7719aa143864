"""Helstrom error for the half-plane observable on a PSK ring, over a grid of sizes."""
import argparse
import time

from y00lab.detection import half_plane_error, neighbor_error
from y00lab.protocol import Constellation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mean-photon", type=float, nargs="+", default=[100.0, 1e3, 1e4])
    ap.add_argument("--m-bases", type=int, nargs="+", default=[10, 100, 1000])
    args = ap.parse_args()
    print(f"{'<n>':>8} {'M':>6} {'half-plane Pe':>14} {'neighbor Pe':>12} {'sec':>6}")
    for n in args.mean_photon:
        for m in args.m_bases:
            t0 = time.perf_counter()
            pe = half_plane_error(Constellation.psk(m, n))
            print(f"{n:8.0f} {m:6d} {pe:14.6e} {neighbor_error(n, m):12.6f} {time.perf_counter() - t0:6.1f}")


if __name__ == "__main__":
    main()
