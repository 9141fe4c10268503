"""Print measured gap constants against their bounds for each witness construction."""

import argparse

from picgap import ChannelParams, delta_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--power", type=float, default=1e4)
    ap.add_argument("--noise", default="1,4,16")
    ap.add_argument("--anchors", type=int, default=64)
    args = ap.parse_args()

    params = ChannelParams(args.power, tuple(float(x) for x in args.noise.split(",")))
    print(f"{'construction':<16} {'const':<8} {'measured':>9} {'bound':>6}  ok")
    for t in range(1, 6):
        for e in delta_report(t, params, anchors=args.anchors):
            m = "n/a" if e.measured is None else f"{e.measured:.4f}"
            print(f"{e.construction:<16} {e.name:<8} {m:>9} {e.bound:>6.2f}  {e.ok}")


if __name__ == "__main__":
    main()
