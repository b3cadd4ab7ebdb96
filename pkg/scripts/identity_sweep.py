"""Sweep tube radii and rank-one sphere radii, reporting the worst identity residual."""

from __future__ import annotations

import argparse
import json
import math

import numpy as np

from isocartan.cartan import verify_model
from isocartan.fixtures import FixtureSpec, PoleParams, build


def sweep(family: str, key: str, values, fixed: dict, re_window, im_window) -> list[dict]:
    rows = []
    for x in values:
        try:
            m = build(FixtureSpec(family, {**fixed, key: float(x)}))
        except PoleParams:
            continue
        reps = verify_model(m, re_window, im_window)
        rows.append({"family": family, key: float(x), **fixed, "radii": len(reps), "max_abs_total": max(abs(r.total) for r in reps)})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=40)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    ts = np.linspace(0.05, 1.5, args.points)
    rows = []
    for n in (2, 3, 4):
        rows += sweep("ComplexProjectiveGeodesicSphere", "t", ts, {"n": n}, (0, 2 * math.pi), None)
        rows += sweep("ComplexHyperbolicGeodesicSphere", "t", ts, {"n": n}, (0, 3), (-2 * math.pi, 2 * math.pi))
    for proj in ("A2", "B2", "G2"):
        rows += sweep("RootDataTube", "s0", ts, {"projection": proj, "vertical": "2"}, (0, 3), (-2 * math.pi, 2 * math.pi))
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    worst = max(rows, key=lambda r: r["max_abs_total"])
    print(f"{len(rows)} models, {sum(r['radii'] for r in rows)} radii")
    print(f"worst |total| = {worst['max_abs_total']:.3e} ({worst['family']})")


if __name__ == "__main__":
    main()
