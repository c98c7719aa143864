"""Bob and Eve bit error rates across the IMDD amplitude sweep, with and without OSK."""
import argparse
from pathlib import Path

from y00lab.cli import fig2_experiment
from y00lab.scenario import load_scenario

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(ROOT / "scenarios" / "fig2.cfg"))
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--plot", help="optional PNG path (needs matplotlib)")
    args = ap.parse_args()
    s = load_scenario(args.config)
    _, rows = fig2_experiment(s, threads=args.threads)
    print(f"{'amp':>6} {'bob':>9} {'eve':>9} {'eve+osk':>9}")
    for r in rows:
        print(f"{r['amplitude']:6.2f} {r['bob_ber']:9.5f} {r['eve_ber_no_osk']:9.5f} {r['eve_ber_osk']:9.5f}")
    if args.plot:
        import matplotlib.pyplot as plt

        amps = [r["amplitude"] for r in rows]
        for key, label in (("bob_ber", "Bob"), ("eve_ber_no_osk", "Eve"), ("eve_ber_osk", "Eve, OSK")):
            plt.semilogy(amps, [max(r[key], 1.0 / s.n_bits) for r in rows], "o-", label=label)
        plt.xlabel("amplitude")
        plt.ylabel("bit error rate")
        plt.legend()
        plt.savefig(args.plot, dpi=120)


if __name__ == "__main__":
    main()
