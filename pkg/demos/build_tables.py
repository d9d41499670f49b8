"""Build the bounds tables for n <= N, write every constructible witness
as a .qcd file, and emit a JSON table that points at those files.

    python3 demos/build_tables.py --n-max 8 --out tables/
"""

import argparse
import pathlib
import time

from qcover.bounds import BoundTable, build_witness
from qcover.qcd import qcd_write
from qcover.render import render, render_json


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--out", default="tables")
    ap.add_argument("--max-blocks", type=int, default=200_000,
                    help="skip witnesses larger than this")
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = BoundTable(args.n_max)
    memo, files = {}, {}
    t0 = time.perf_counter()
    for cell in sorted(table, key=lambda c: (c.n, c.k, c.r)):
        if not cell.witnessed or cell.upper > args.max_blocks:
            continue
        design = build_witness(table, cell.n, cell.k, cell.r, _memo=memo)
        path = out / f"C2_{cell.n}_{cell.k}_{cell.r}.qcd"
        qcd_write(design, path)
        files[(cell.n, cell.k, cell.r)] = path.name
    elapsed = time.perf_counter() - t0
    (out / "bounds.json").write_text(render_json(table, range(2, args.n_max + 1), files))
    (out / "bounds.md").write_text(render(table, "markdown"))
    print(render(table, "text", n_min=max(2, args.n_max - 1)))
    print(f"{len(files)} verified witnesses written to {out}/ in {elapsed:.1f} s")


if __name__ == "__main__":
    main()
