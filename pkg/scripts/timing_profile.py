#!/usr/bin/env python3
"""Break the pipeline for one m into stages and time each one."""

import argparse
import time
from fractions import Fraction

from maasslift.shimura import (IDENTIFY_MARGIN, identify_rational, lift_expansion, pole_data, pole_polynomial,
                               tensor_input)


def stage(name, fn):
    t0 = time.perf_counter()
    out = fn()
    print(f"{name:<16}{time.perf_counter() - t0:8.2f}s")
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--m", default="14/3")
    p.add_argument("--float-bits", type=int, default=256)
    args = p.parse_args()
    m, bits = Fraction(args.m), args.float_bits
    poles = stage("poles", lambda: pole_data(tensor_input(m, 1)))
    print("  " + ", ".join(map(str, poles)))
    B = stage("B polynomial", lambda: pole_polynomial(poles, bits))
    T = B.degree + IDENTIFY_MARGIN
    print(f"  deg B = {B.degree}, lift length T = {T}")
    f = stage("input forms", lambda: tensor_input(m, T))
    lift = stage("lift", lambda: lift_expansion(f, T))
    rf = stage("identification", lambda: identify_rational(lift, poles, T, bits, B=B))
    print(f"  deg A = {rf.num.degree}")


if __name__ == "__main__":
    main()
