"""Which root does each inner cap P reach from (4.4-5.0i, 8.5-16i)?

Runs M1 and M2 for P = 3..17 on the exp/cos system that owns the seven-root
catalog, plus Newton from the same start, and names every exit.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from muller2d.baselines import newton_solve
from muller2d.core import SolveConfig
from muller2d.core import format_complex as fc
from muller2d.solver2d import solve
from muller2d.systems import S4_CATALOG_START, get_system


@dataclass
class Config:
    p_lo: int = 3
    p_hi: int = 17
    swap: bool = False


def main(cfg: Config) -> None:
    s = get_system("S4")
    start = S4_CATALOG_START
    for variant in ("m1", "m2"):
        for p in range(cfg.p_lo, cfg.p_hi + 1):
            res = solve(s, start, SolveConfig(inner_cap=p, variant=variant, swap_equations=cfg.swap))
            kr = s.match_root(res.root)
            label = kr.provenance if kr else "(not cataloged)"
            print(f"{variant} P={p:2d} N={res.outer_iterations:3d} {res.exit_reason.value:24s} {label:16s} "
                  f"x={fc(res.root.x, 10)} y={fc(res.root.y, 10)}")
    res = newton_solve(s, start, SolveConfig(variant="newton", swap_equations=cfg.swap))
    kr = s.match_root(res.root)
    print(f"newton N={res.outer_iterations} {res.exit_reason.value} {kr.provenance if kr else '(not cataloged)'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=3)
    ap.add_argument("--hi", type=int, default=17)
    ap.add_argument("--swap", action="store_true")
    a = ap.parse_args()
    main(Config(a.lo, a.hi, a.swap))
