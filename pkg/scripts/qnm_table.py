"""Schwarzschild l = 2 quasi-normal modes from the Regge-Wheeler system.

Each mode n is seeded at the tabulated omega_n + 0.01 + 0.01i with
l = 2.1 + 0.01i. Prints omega, l and the distances to the tabulated and the
phase-amplitude reference values for each method and inner cap P.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from muller2d.core import SolveConfig
from muller2d.systems import QNM_ANDERSSON, QNM_TABLE, QnmParams, solve_qnm_mode


@dataclass
class Config:
    modes: tuple[int, ...] = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)
    methods: tuple[str, ...] = ("m1", "m2")
    p_values: tuple[int, ...] = (5,)
    epsilon: float = 0.0
    outer_cap: int = 60


def main(cfg: Config) -> None:
    q = QnmParams(epsilon_phase=cfg.epsilon)
    print(f"{'n':>2s} {'method':6s} {'P':>2s} {'omega':>34s} {'|l-2|':>9s} {'d_table':>9s} {'d_ref':>9s} {'exit':22s} s")
    for n in cfg.modes:
        for m in cfg.methods:
            for p in cfg.p_values:
                t0 = time.perf_counter()
                res = solve_qnm_mode(QNM_TABLE[n] + 0.01 + 0.01j, q,
                                     SolveConfig(inner_cap=p, outer_cap=cfg.outer_cap, variant=m))
                w = res.root.x
                print(f"{n:2d} {m:6s} {p:2d} {w.real:+.10f}{w.imag:+.10f}i {abs(res.root.y - 2):9.1e} "
                      f"{abs(w - QNM_TABLE[n]):9.1e} {abs(w - QNM_ANDERSSON[n]):9.1e} "
                      f"{res.exit_reason.value:22s} {time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--modes", default="0,1,2,3,4,5,6,7,8,9,10")
    ap.add_argument("--methods", default="m1,m2")
    ap.add_argument("--p", default="5", help="comma separated inner caps")
    ap.add_argument("--epsilon", type=float, default=0.0)
    a = ap.parse_args()
    main(Config(tuple(int(v) for v in a.modes.split(",")), tuple(a.methods.split(",")),
                tuple(int(v) for v in a.p.split(",")), a.epsilon))
