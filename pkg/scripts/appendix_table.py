"""Rerun the published benchmark cells (elementary, special-function and Heun systems).

Prints one line per (system, start, method) with the iteration count next to
the published one and whether the exit matches the published root.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from muller2d.cli import bench_cells, render
from muller2d.core import SolveConfig
from muller2d.systems import APPENDIX_CELLS, HEUN_CELLS


@dataclass
class Config:
    include_heun: bool = True
    repeat: int = 1
    csv_out: str | None = None


def main(cfg: Config) -> None:
    cells = APPENDIX_CELLS + (HEUN_CELLS if cfg.include_heun else ())
    recs = bench_cells(cells, SolveConfig(), cfg.repeat, None, False)
    print(f"{'system':6s} {'method':8s} {'N':>3s} {'N_pub':>5s} {'P':>3s}  {'root':14s} match  ms")
    for r in recs:
        e = r.extra
        ok = "yes" if r.matched_known_root == e["expected_root"] else "NO"
        print(f"{r.system:6s} {r.method:8s} {r.result.outer_iterations:3d} {e['ref_outer_iters']:5d} "
              f"{str(e['ref_p']):>3s}  {e['expected_root']:14s} {ok:5s} {r.wall_time_ms:7.1f}")
    if cfg.csv_out:
        with open(cfg.csv_out, "w", encoding="utf-8") as fh:
            fh.write(render(recs, "csv"))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-heun", action="store_true")
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--csv", default=None)
    a = ap.parse_args()
    main(Config(not a.no_heun, a.repeat, a.csv))
