#!/usr/bin/env python3
"""Print the lobe-area coefficient across delta by every route we have.

Columns: delta, nu, Gamma by the series, the elliptic closed form, the
asymptotic formula, and the relative deviation of the asymptotic. The two
exact routes agree to working precision; the asymptotic drifts in from
below as delta grows.
"""

import argparse

from mpmath import mp, mpf

from suris import gamma_asymptotic, gamma_elliptic, gamma_series, nu_from_delta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=40)
    ap.add_argument("--deltas", default="0.05,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    args = ap.parse_args()

    mp.dps = args.digits
    print(f"{'delta':>6} {'nu':>12} {'Gamma (series)':>24} {'series-elliptic':>16} {'asym/Gamma-1':>14}")
    for ds in args.deltas.split(","):
        d = mpf(ds)
        nu = nu_from_delta(d)
        g = gamma_series(nu)
        ge = gamma_elliptic(nu)
        ga = gamma_asymptotic(nu)
        print(
            f"{ds:>6} {mp.nstr(nu, 6):>12} {mp.nstr(g, 18):>24} "
            f"{mp.nstr(abs(g - ge), 3):>16} {mp.nstr(ga / g - 1, 4):>14}"
        )


if __name__ == "__main__":
    main()
