"""Partial sums of the lifted trace under symmetric and ordered truncation."""

from __future__ import annotations

import argparse

from isocartan.cartan import lifted_trace


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r1", type=float, default=1.0)
    ap.add_argument("--r2", type=float, default=-2.0)
    ap.add_argument("--m1", type=int, default=1)
    ap.add_argument("--m2", type=int, default=3)
    ap.add_argument("--i0", type=int, default=1)
    args = ap.parse_args()
    print(f"{'K':>8} {'symmetric':>14} {'ordered':>14} {'K*ordered':>12}")
    for K in (1, 10, 100, 1000, 10000, 100000):
        sym = lifted_trace(args.r1, args.r2, args.m1, args.m2, args.i0, K)
        ordered = lifted_trace(args.r1, args.r2, args.m1, args.m2, args.i0, K, "ordered")
        print(f"{K:>8} {sym:>14.6g} {ordered:>14.6g} {K * ordered:>12.6f}")


if __name__ == "__main__":
    main()
