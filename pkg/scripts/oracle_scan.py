"""Compare closed-form focal radii with a brute-force zero scan for every catalog block."""

from __future__ import annotations

import math
import time

from isocartan.fixtures import CATALOG, build
from isocartan.focal import block_radii_complex, block_radii_real
from isocartan.rootscan import scan_block_complex, scan_block_real


def main() -> None:
    start = time.perf_counter()
    for name, spec in CATALOG.items():
        m = build(spec)
        for i, b in enumerate(m.blocks):
            if m.ambient.is_compact_like:
                w = (0.0, 2 * math.pi)
                closed = [complex(x) for x in block_radii_real(b.lam, b.mu, w)]
                found = [complex(x) for x in scan_block_real(b.lam, b.mu, w)]
            else:
                rw, iw = (0.0, 3.0), (-2 * math.pi, 2 * math.pi)
                closed = block_radii_complex(b.lam, b.mu, rw, iw)
                found = scan_block_complex(b.lam, b.mu, rw, iw)
            err = max((min((abs(z - w) for w in found), default=math.inf) for z in closed), default=0.0)
            status = "ok" if len(closed) == len(found) and err < 1e-8 else "MISMATCH"
            print(f"{name:24} block {i}: {len(closed):3d} closed, {len(found):3d} scanned, max dist {err:.1e} {status}")
    print(f"{time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
