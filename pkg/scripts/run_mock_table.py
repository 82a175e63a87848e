#!/usr/bin/env python3
"""Compute the table r_m for m = 2/3, 5/3, ... up to --max-m and print it with per-m timings."""

import argparse
import time
from fractions import Fraction

from maasslift.config import RunConfig
from maasslift.exact import format_rational
from maasslift.shimura import IDENTIFY_MARGIN, basis_indices, j3_at_z_u, run_lift


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-m", default="14/3")
    p.add_argument("--float-bits", type=int, default=None)
    args = p.parse_args()
    cfg = RunConfig.from_env(float_bits=args.float_bits)
    x = j3_at_z_u(cfg.float_bits)
    base = run_lift(Fraction(-1, 3), IDENTIFY_MARGIN, cfg.float_bits, cfg.divisor_exponent, x).value
    print("m\tr_m\tdeg_B\tseconds")
    for m in sorted(basis_indices(Fraction(args.max_m)), reverse=True):
        t0 = time.perf_counter()
        res = run_lift(m, None, cfg.float_bits, cfg.divisor_exponent, x)
        print(f"{format_rational(m)}\t{format_rational(res.value / base)}\t{res.rational.den.degree}\t"
              f"{time.perf_counter() - t0:.2f}", flush=True)


if __name__ == "__main__":
    main()
