"""Check that the closed-form type-4/5 regions sit inside the layered random-coding regions."""

import argparse

import numpy as np

from picgap import ChannelParams
from picgap.appendix import appendix_closed_form, appendix_rates, check_inclusion


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--noise", default="1,4,16")
    ap.add_argument("--pmin", type=float, default=1.0, help="log10 of the smallest power")
    ap.add_argument("--pmax", type=float, default=6.0, help="log10 of the largest power")
    ap.add_argument("--steps", type=int, default=11)
    args = ap.parse_args()

    N = tuple(float(x) for x in args.noise.split(","))
    print(f"{'type':>4} {'P':>10} {'included':>8} {'margin':>10}")
    for t in (4, 5):
        for P in np.logspace(args.pmin, args.pmax, args.steps):
            params = ChannelParams(float(P), N)
            if P < N[1] + N[2]:
                print(f"{t:>4} {P:>10.4g} {'skip':>8}")
                continue
            res = check_inclusion(appendix_rates(t, params), appendix_closed_form(t, params))
            print(f"{t:>4} {P:>10.4g} {str(res.included):>8} {res.worst_margin:>10.2e}")


if __name__ == "__main__":
    main()
