"""Phase-variation sweep for one quasi-normal mode (default n = 8).

For each epsilon the mode is re-solved from the tabulated omega_n + 0.01 +
0.01i; the sign of Re(omega) is printed where a root is found.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from muller2d.core import SolveConfig
from muller2d.systems import QNM_TABLE, QnmParams, solve_qnm_mode


@dataclass
class Config:
    mode: int = 8
    lo: float = -0.3
    hi: float = 0.3
    step: float = 0.05
    methods: tuple[str, ...] = ("m1", "m2")


def main(cfg: Config) -> None:
    seed = QNM_TABLE[cfg.mode] + 0.01 + 0.01j
    for eps in np.round(np.arange(cfg.lo, cfg.hi + cfg.step / 2, cfg.step), 10):
        row = [f"eps={eps:+.3f}"]
        for m in cfg.methods:
            res = solve_qnm_mode(seed, QnmParams(epsilon_phase=float(eps)),
                                 SolveConfig(inner_cap=5, outer_cap=60, variant=m))
            if res.converged:
                w = res.root.x
                row.append(f"{m}: {w.real:+.9f}{w.imag:+.9f}i")
            else:
                row.append(f"{m}: none ({res.exit_reason.value})")
        print("  ".join(row))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", type=int, default=8)
    ap.add_argument("--lo", type=float, default=-0.3)
    ap.add_argument("--hi", type=float, default=0.3)
    ap.add_argument("--step", type=float, default=0.05)
    a = ap.parse_args()
    main(Config(a.mode, a.lo, a.hi, a.step))
