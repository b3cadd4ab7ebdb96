"""Write the restricted root census as Markdown and CSV next to a diff summary."""

from __future__ import annotations

import argparse
from pathlib import Path

from isocartan.census import compute_census, render_csv, render_markdown


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    lines = compute_census()
    (args.out_dir / "census.md").write_text(render_markdown(lines))
    (args.out_dir / "census.csv").write_text(render_csv(lines))
    diffs = [ln for ln in lines if not ln.matches]
    print(f"{len(lines)} instances, {len(diffs)} differ")
    for ln in diffs:
        print(f"  {ln.quotient}: computed {ln.computed.as_tuple()} stored {ln.published} flagged={ln.flagged}")


if __name__ == "__main__":
    main()
