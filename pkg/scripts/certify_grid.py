"""Run the one-bit certification over a grid of powers and noise profiles."""

import argparse
import time

from picgap import ChannelParams, GridSpec, certify

POWERS = (10.0, 1e2, 1e3, 1e4)
NOISES = ((1.0, 1.0, 1.0), (1.0, 4.0, 16.0), (1.0, 2.0, 4.0), (1.0, 10.0, 100.0))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--grid", type=int, default=64)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--types", default="1,2,3,4,5")
    args = ap.parse_args()

    types = [int(t) for t in args.types.split(",")]
    print(f"{'type':>4} {'P':>8} {'N':>16} {'fail':>5} {'ugap':>7} {'trivial':>7} {'sec':>6}")
    for t in types:
        for P in POWERS:
            for N in NOISES:
                t0 = time.perf_counter()
                rep = certify(t, ChannelParams(P, N), args.samples, GridSpec(args.grid), args.seed)
                dt = time.perf_counter() - t0
                print(f"{t:>4} {P:>8g} {str(N):>16} {len(rep.failures):>5} "
                      f"{rep.max_uniform_gap:>7.4f} {str(rep.trivial_case):>7} {dt:>6.2f}")


if __name__ == "__main__":
    main()
