#!/usr/bin/env python3
"""Run every reference check and print a compact PASS/FAIL table; exit status mirrors the result."""

import sys

from maasslift.verify import format_rows, run_all


def main() -> int:
    results = run_all()
    for r in results:
        print(f"criterion {r.number:>2}  {'PASS' if r.passed else 'FAIL'}  {r.seconds:7.2f}s  {r.title}")
        for row in format_rows(r):
            if row.endswith("FAIL"):
                print("    " + row)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
