#!/usr/bin/env python3
"""Measure turnstile lobe areas directly and compare with eps Gamma(nu).

For each eps the table shows A/eps, the relative deviation from Gamma, and
the remainder constant (A/eps - Gamma)/eps; the last column converging to a
finite value as eps shrinks is the O(eps^2) remainder made visible.
"""

import argparse
import time

from mpmath import mp, mpf

from suris import MapParams, lobe_area_numeric


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--delta", default="0.5")
    ap.add_argument("--eps", default="1e-2,1e-3,1e-4,1e-5,1e-6")
    ap.add_argument("--digits", type=int, default=40)
    args = ap.parse_args()

    mp.dps = args.digits
    d = mpf(args.delta)
    print(f"delta = {args.delta}, digits = {args.digits}")
    print(f"{'eps':>8} {'A/eps':>26} {'rel dev from Gamma':>20} {'remainder const':>16} {'secs':>6}")
    for es in args.eps.split(","):
        e = mpf(es)
        t0 = time.perf_counter()
        rec = lobe_area_numeric(MapParams(d, e))
        dt = time.perf_counter() - t0
        gamma = rec.melnikov_area / e
        ratio = rec.area_numeric / e
        print(
            f"{es:>8} {mp.nstr(ratio, 18):>26} {mp.nstr(rec.rel_err, 4):>20} "
            f"{mp.nstr((ratio - gamma) / e, 6):>16} {dt:>6.1f}"
        )


if __name__ == "__main__":
    main()
