"""Command-line harness: single solves, benchmark suites and parameter sweeps.

Every command produces :class:`RunRecord` rows written as CSV (default) or
JSON. Numeric fields are printed with 12 significant digits so a table can
be parsed back without loss at that precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .baselines import broyden_solve, newton_solve
from .core import (
    PointPair,
    RootFindingError,
    RootResult,
    SolveConfig,
    SystemSpec,
    Variant,
    format_complex,
    parse_complex,
    parse_pair,
)
from .solver2d import solve as muller_solve2d
from .systems import (
    APPENDIX_CELLS,
    HEUN_CELLS,
    PRESET_NAMES,
    QNM_ANDERSSON,
    QNM_TABLE,
    QnmParams,
    TableCell,
    build_rw_system,
    get_system,
    qnm_tolerance,
    solve_qnm_mode,
)

COLUMNS = ("system", "method", "x0", "y0", "x_final", "y_final", "outer_iters",
           "inner_iters", "f1_abs", "f2_abs", "status", "matched_root", "wall_time_ms")
SIG = 12
DEFAULT_QNM_MODES = (0, 1, 2, 3, 4, 5, 6, 7, 9, 10)


@dataclass
class RunRecord:
    """One solver run plus bookkeeping.

    ``extra`` holds suite-specific columns (reference counts, sweep value,
    QNM deltas) appended after the fixed columns.
    """

    system: str
    method: str
    start: PointPair
    result: RootResult
    matched_known_root: Optional[str]
    wall_time_ms: float
    extra: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.result.converged

    def row(self) -> dict:
        r = self.result
        out = {
            "system": self.system,
            "method": self.method,
            "x0": format_complex(self.start.x, SIG),
            "y0": format_complex(self.start.y, SIG),
            "x_final": format_complex(r.root.x, SIG),
            "y_final": format_complex(r.root.y, SIG),
            "outer_iters": r.outer_iterations,
            "inner_iters": r.inner_iterations_total,
            "f1_abs": _fmt_float(r.residual_f1),
            "f2_abs": _fmt_float(r.residual_f2),
            "status": r.exit_reason.value,
            "matched_root": self.matched_known_root or "",
            "wall_time_ms": _fmt_float(self.wall_time_ms),
        }
        out.update({k: _fmt_value(v) for k, v in self.extra.items()})
        return out


def _fmt_float(v: float) -> str:
    return f"{v:.{SIG}g}"


def _fmt_value(v):
    if isinstance(v, complex):
        return format_complex(v, SIG)
    if isinstance(v, float):
        return _fmt_float(v)
    if v is None:
        return ""
    return v if isinstance(v, (int, str)) else str(v)


# --- running ------------------------------------------------------------------

def run_method(sys_: SystemSpec, method: str, start: PointPair, cfg: SolveConfig) -> RootResult:
    variant = Variant(method)
    cfg = cfg.with_(variant=variant)
    if variant is Variant.NEWTON:
        return newton_solve(sys_, start, cfg)
    if variant is Variant.BROYDEN:
        return broyden_solve(sys_, start, cfg)
    return muller_solve2d(sys_, start, cfg)


def _timed(fn, repeat: int):
    """Run ``fn`` ``repeat`` times; return the last result and the mean time in ms."""
    times = []
    result = None
    for _ in range(max(repeat, 1)):
        t0 = time.perf_counter()
        result = fn()
        times.append((time.perf_counter() - t0) * 1e3)
    return result, statistics.fmean(times)


def make_record(sys_: SystemSpec, method: str, start: PointPair, result: RootResult,
                ms: float, extra: Optional[dict] = None) -> RunRecord:
    kr = sys_.match_root(result.root)
    return RunRecord(sys_.name, method, start, result, kr.provenance if kr else None, ms, extra or {})


def run_one(sys_: SystemSpec, method: str, start: PointPair, cfg: SolveConfig,
            repeat: int = 1, extra: Optional[dict] = None) -> RunRecord:
    result, ms = _timed(lambda: run_method(sys_, method, start, cfg), repeat)
    return make_record(sys_, method, start, result, ms, extra)


def run_qnm(mode: Optional[int], seed: complex, q: QnmParams, cfg: SolveConfig,
            method: str, repeat: int = 1, extra: Optional[dict] = None) -> RunRecord:
    cfg = cfg.with_(variant=Variant(method))
    result, ms = _timed(lambda: solve_qnm_mode(seed, q, cfg), repeat)
    sys_ = build_rw_system(q)
    rec = make_record(sys_, method, PointPair(seed, 2.1 + 0.01j), result, ms)
    ex = {"epsilon": q.epsilon_phase}
    if mode is not None:
        w = result.root.x
        ex.update({
            "mode": mode,
            "omega_table": QNM_TABLE[mode],
            "delta_table": abs(w - QNM_TABLE[mode]),
            "delta_reference": abs(w - QNM_ANDERSSON[mode]),
            "l_gap": abs(result.root.y - 2),
            "flags": ";".join(result.flags),
        })
    ex.update(extra or {})
    rec.extra = ex
    return rec


def bench_cells(cells: Iterable[TableCell], base: SolveConfig, repeat: int,
                p_override: Optional[int], swap_override: bool,
                methods: Optional[Sequence[str]] = None) -> list[RunRecord]:
    records = []
    for cell in cells:
        sys_ = get_system(cell.system)
        for method in cell.methods:
            if methods and method not in methods:
                continue
            ref_n, ref_p = cell.counts[method]
            p = p_override or ref_p or base.inner_cap
            cfg = base.with_(inner_cap=p, swap_equations=cell.swap or swap_override)
            extra = {"ref_outer_iters": ref_n, "ref_p": ref_p if ref_p is not None else "",
                     "expected_root": cell.root}
            try:
                rec = run_one(sys_, method, cell.start, cfg, repeat)
            except RootFindingError as exc:  # pragma: no cover - solvers report, not raise
                print(f"warning: {cell.system} {method}: {exc}", file=sys.stderr)
                continue
            n = rec.result.outer_iterations
            extra["iters_in_band"] = "yes" if abs(n - ref_n) <= 0.5 * ref_n else "no"
            rec.extra = extra
            records.append(rec)
    return records


def bench_qnm(modes: Sequence[int], base: SolveConfig, method: str, repeat: int,
              epsilon: float = 0.0, seed_offset: complex = 0.01 + 0.01j) -> list[RunRecord]:
    q = QnmParams(epsilon_phase=epsilon)
    recs = []
    for n in modes:
        rec = run_qnm(n, QNM_TABLE[n] + seed_offset, q, base, method, repeat)
        recs.append(rec)
    return recs


# --- argument parsing -------------------------------------------------------

def parse_range(text: str) -> list[float]:
    """``lo:hi[:step]`` inclusive (step defaults to 1); also ``a..b`` and ``a,b,c``."""
    text = text.strip()
    if "," in text:
        return [float(t) for t in text.split(",")]
    if ".." in text and ":" not in text:
        lo, hi = text.split("..")
        parts = [lo, hi]
    else:
        parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"range must be lo:hi[:step], got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    step = float(parts[2]) if len(parts) == 3 else 1.0
    if step <= 0:
        raise ValueError("range step must be positive")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    if count < 1:
        raise ValueError(f"empty range {text!r}")
    # round away accumulation noise such as 0.30000000000000004
    return [round(lo + k * step, 12) for k in range(count)]


def parse_matrix(text: str):
    vals = [parse_complex(t) for t in text.split(",")]
    if len(vals) != 4:
        raise ValueError(f"precondition needs four entries 'a,b,c,d', got {text!r}")
    return (vals[0], vals[1]), (vals[2], vals[3])


def _global_parser() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out", default=None, help="output file (default stdout)")
    g.add_argument("--digits", type=int, default=12)
    g.add_argument("--p", type=int, default=None, help="inner Muller cap P")
    g.add_argument("--max-outer", type=int, default=100)
    g.add_argument("--deviation", default="0.001")
    g.add_argument("--swap", action="store_true", help="exchange the two equations")
    g.add_argument("--precondition", default=None, help="matrix 'a,b,c,d'")
    g.add_argument("--repeat", type=int, default=1)
    g.add_argument("--seed-start", default=None, help="start pair 'x,y'")
    return g


def build_parser() -> argparse.ArgumentParser:
    g = _global_parser()
    ap = argparse.ArgumentParser(prog="muller2d", parents=[g],
                                 description="Two-dimensional Muller root finding harness")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list-systems", parents=[g], help="list preset systems")

    s = sub.add_parser("solve", parents=[g], help="run one solve")
    s.add_argument("--system", required=True)
    s.add_argument("--method", default="m1", choices=[v.value for v in Variant])
    s.add_argument("--start", default=None, help="start pair 'x,y'")
    s.add_argument("--epsilon", type=float, default=0.0, help="RW phase variation")

    b = sub.add_parser("bench", parents=[g], help="run a benchmark suite")
    b.add_argument("--suite", choices=("appendix", "heun", "qnm", "all"), default="appendix")
    b.add_argument("--modes", default=None, help="QNM modes, e.g. 0..7 or 0,1,9")
    b.add_argument("--method", default=None, help="restrict to one method")

    w = sub.add_parser("sweep", parents=[g], help="sweep P or epsilon")
    w.add_argument("--system", default="RW")
    w.add_argument("--method", default="m2", choices=[v.value for v in Variant])
    w.add_argument("--start", default=None)
    w.add_argument("--param", choices=("p", "epsilon"), required=True)
    w.add_argument("--values", required=True, help="lo:hi[:step]")
    w.add_argument("--mode", type=int, default=8, help="QNM mode for epsilon sweeps")

    q = sub.add_parser("qnm", parents=[g], help="solve one Regge-Wheeler mode")
    q.add_argument("--mode", type=int, default=0)
    q.add_argument("--omega", default=None, help="seed frequency (default table value + 0.01+0.01i)")
    q.add_argument("--epsilon", type=float, default=0.0)
    q.add_argument("--r-abs", type=float, default=20.0)
    q.add_argument("--method", default="m1", choices=("m1", "m2", "broyden"))
    return ap


def config_from(args, p_default: int = 5) -> SolveConfig:
    pre = parse_matrix(args.precondition) if args.precondition else None
    return SolveConfig(digits=args.digits, inner_cap=args.p or p_default,
                       outer_cap=args.max_outer, deviation=parse_complex(args.deviation),
                       swap_equations=args.swap, precondition=pre)


def _start(args, fallback: Optional[PointPair]) -> PointPair:
    text = getattr(args, "start", None) or args.seed_start
    if text:
        return parse_pair(text)
    if fallback is None:
        raise ValueError("a start pair is required (--start 'x,y')")
    return fallback


# --- output -----------------------------------------------------------------

def render(records: Sequence[RunRecord], fmt: str) -> str:
    rows = [r.row() for r in records]
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    extra_cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in COLUMNS and k not in extra_cols:
                extra_cols.append(k)
    buf = io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=list(COLUMNS) + extra_cols, lineterminator="\n")
    wr.writeheader()
    for r in rows:
        wr.writerow(r)
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def emit(records: Sequence[RunRecord], args) -> None:
    text = render(records, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands -----------------------------------------------------------------

def cmd_list(args) -> int:
    for name in PRESET_NAMES:
        s = get_system(name)
        print(f"{name:5s} {s.description}")
        for kr in s.known_roots:
            print(f"      {kr.provenance:14s} x = {format_complex(kr.pair.x, 11):>32s}"
                  f"  y = {format_complex(kr.pair.y, 11)}")
    return 0


def cmd_solve(args) -> RunRecord:
    name = args.system.upper()
    cfg = config_from(args)
    if name == "RW":
        q = QnmParams(epsilon_phase=args.epsilon)
        start = _start(args, PointPair(QNM_TABLE[0] + 0.01 + 0.01j, 2.1 + 0.01j))
        if args.method == "newton":
            return run_one(build_rw_system(q), args.method, start, cfg, args.repeat)
        # the mode driver always seeds l at 2.1+0.01i
        return run_qnm(None, start.x, q, cfg, args.method, args.repeat)
    sys_ = get_system(name)
    start = _start(args, sys_.recommended_starts[0] if sys_.recommended_starts else None)
    return run_one(sys_, args.method, start, cfg, args.repeat)


def _modes(text: Optional[str]) -> list[int]:
    if not text:
        return list(DEFAULT_QNM_MODES)
    return [int(v) for v in parse_range(text)]


def cmd_bench(args) -> list[RunRecord]:
    base = config_from(args)
    methods = [args.method] if args.method else None
    recs: list[RunRecord] = []
    if args.suite in ("appendix", "all"):
        recs += bench_cells(APPENDIX_CELLS, base, args.repeat, args.p, args.swap, methods)
    if args.suite in ("heun", "all"):
        recs += bench_cells(HEUN_CELLS, base, args.repeat, args.p, args.swap, methods)
    if args.suite in ("qnm", "all"):
        qcfg = base.with_(outer_cap=min(base.outer_cap, 60))
        recs += bench_qnm(_modes(args.modes), qcfg, args.method or "m1", args.repeat)
    return recs


def cmd_sweep(args) -> list[RunRecord]:
    values = parse_range(args.values)
    cfg = config_from(args)
    recs = []
    if args.param == "epsilon":
        text = args.start or args.seed_start
        seed = parse_pair(text).x if text else QNM_TABLE[args.mode] + 0.01 + 0.01j
        qcfg = cfg.with_(outer_cap=min(cfg.outer_cap, 60))
        for eps in values:
            rec = run_qnm(args.mode, seed, QnmParams(epsilon_phase=eps), qcfg, args.method, args.repeat)
            rec.extra = {"param": "epsilon", "value": eps, **rec.extra}
            recs.append(rec)
        return recs
    sys_ = get_system(args.system)
    start = _start(args, sys_.recommended_starts[-1] if sys_.recommended_starts else None)
    for v in values:
        p = int(v)
        rec = run_one(sys_, args.method, start, cfg.with_(inner_cap=p), args.repeat,
                      {"param": "p", "value": p})
        recs.append(rec)
    return recs


def cmd_qnm(args) -> RunRecord:
    q = QnmParams(epsilon_phase=args.epsilon, r_abs=args.r_abs)
    seed = parse_complex(args.omega) if args.omega else QNM_TABLE[args.mode] + 0.01 + 0.01j
    cfg = config_from(args).with_(outer_cap=min(args.max_outer, 60))
    return run_qnm(args.mode, seed, q, cfg, args.method, args.repeat)


_VALUE_OPTS = {"--start", "--seed-start", "--deviation", "--omega", "--values",
               "--precondition", "--epsilon"}


def _glue_negative(argv: Sequence[str]) -> list[str]:
    """Turn ``--start -0.5,3`` into ``--start=-0.5,3`` so argparse accepts it."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(_glue_negative(sys.argv[1:] if argv is None else argv))
    try:
        if args.command == "list-systems":
            return cmd_list(args)
        if args.command == "solve":
            rec = cmd_solve(args)
            emit([rec], args)
            if not rec.converged:
                print(f"not converged: {rec.result.exit_reason.value} {rec.result.message}".rstrip(),
                      file=sys.stderr)
            return 0 if rec.converged else 1
        if args.command == "bench":
            emit(cmd_bench(args), args)
            return 0
        if args.command == "sweep":
            emit(cmd_sweep(args), args)
            return 0
        if args.command == "qnm":
            rec = cmd_qnm(args)
            emit([rec], args)
            return 0 if rec.converged else 1
    except (ValueError, KeyError) as exc:
        ap.error(str(exc))
    return 2  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
