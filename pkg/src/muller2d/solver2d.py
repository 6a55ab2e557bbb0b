"""Two-dimensional Muller iteration (variants M1 and M2).

Each outer iteration fits a plane through the last three samples of the
second function, intersects it with ``z = 0`` to get a linear relation
between the variables, and runs a one-dimensional Muller solve of the
first function along that line. M1 reads the other coordinate off the
line; M2 runs a second one-dimensional solve of the second function.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from .core import (
    DegenerateGeometry,
    EvaluationFailure,
    ExitReason,
    PointPair,
    RootResult,
    SolveConfig,
    SystemSpec,
    Variant,
    apply_precondition,
    safe_eval,
)
from .muller1d import MAX_BACKTRACK, muller_solve

log = logging.getLogger(__name__)

#: one residual must exceed the other's tolerance by this factor for the
#: single-variable fallback to fire
FALLBACK_RATIO = 1e3
MAX_RESEEDS = 3


class Orientation(str, enum.Enum):
    Y_OF_X = "YofX"
    X_OF_Y = "XofY"


@dataclass(frozen=True)
class Plane:
    c1: complex
    c2: complex
    c3: complex

    def __call__(self, x: complex, y: complex) -> complex:
        return self.c1 * x + self.c2 * y + self.c3


@dataclass(frozen=True)
class LineRelation:
    slope: complex
    intercept: complex
    orientation: Orientation

    def __call__(self, t: complex) -> complex:
        return self.slope * t + self.intercept

    def point(self, t: complex) -> PointPair:
        """The (x, y) pair on the line parametrised by the free coordinate ``t``."""
        if self.orientation is Orientation.Y_OF_X:
            return PointPair(t, self(t))
        return PointPair(self(t), t)


@dataclass(frozen=True)
class IterateTriple:
    p_nm2: PointPair
    p_nm1: PointPair
    p_n: PointPair
    f2_vals: tuple[complex, complex, complex]

    @property
    def points(self) -> tuple[PointPair, PointPair, PointPair]:
        return self.p_nm2, self.p_nm1, self.p_n


def seed_points(start: PointPair, deviation: complex) -> tuple[PointPair, PointPair, PointPair]:
    # A symmetric +/- offset of both coordinates puts the three pairs on one
    # complex line, which makes the plane fit singular; use a triangle instead.
    d = complex(deviation)
    if d == 0:
        raise ValueError("deviation must be nonzero")
    x, y = start.x, start.y
    return PointPair(x - d, y - d), PointPair(x + d, y - d), PointPair(x, y)


def seed_triple(sys: SystemSpec, start: PointPair, deviation: complex) -> IterateTriple:
    """Three starting pairs around ``start`` (newest last) with F2 evaluated at each."""
    pts = seed_points(start, deviation)
    vals = tuple(safe_eval(sys.f2, p.x, p.y) for p in pts)
    return IterateTriple(*pts, vals)


def fit_plane(t: IterateTriple) -> Plane:
    """Coefficients of ``z = c1*x + c2*y + c3`` through the three samples.

    The system is centred on the newest sample (which eliminates ``c3``) and
    the remaining 2x2 system is solved with partial pivoting.
    """
    p0, p1, p2 = t.p_n, t.p_nm1, t.p_nm2
    f0, f1, f2 = t.f2_vals[2], t.f2_vals[1], t.f2_vals[0]
    a11, a12, b1 = p1.x - p0.x, p1.y - p0.y, f1 - f0
    a21, a22, b2 = p2.x - p0.x, p2.y - p0.y, f2 - f0
    n1 = (abs(a11) ** 2 + abs(a12) ** 2) ** 0.5
    n2 = (abs(a21) ** 2 + abs(a22) ** 2) ** 0.5
    det = a11 * a22 - a12 * a21
    if n1 == 0 or n2 == 0 or abs(det) <= 1e-13 * n1 * n2:
        raise DegenerateGeometry("collinear samples: plane fit is singular")
    if abs(a21) > abs(a11):
        a11, a12, b1, a21, a22, b2 = a21, a22, b2, a11, a12, b1
    m = a21 / a11
    a22 -= m * a12
    b2 -= m * b1
    c2 = b2 / a22
    c1 = (b1 - a12 * c2) / a11
    c3 = f0 - c1 * p0.x - c2 * p0.y
    return Plane(c1, c2, c3)


def intersect_zero(pl: Plane) -> LineRelation:
    """Line ``c1*x + c2*y + c3 = 0``, solved for the variable with the larger coefficient."""
    a1, a2 = abs(pl.c1), abs(pl.c2)
    if max(a1, a2) <= 1e-14 * abs(pl.c3) or (a1 == 0 and a2 == 0):
        raise DegenerateGeometry("plane is parallel to z = 0")
    if a2 >= a1:
        return LineRelation(-pl.c1 / pl.c2, -pl.c3 / pl.c2, Orientation.Y_OF_X)
    return LineRelation(-pl.c2 / pl.c1, -pl.c3 / pl.c1, Orientation.X_OF_Y)


class _Run:
    """Mutable bookkeeping for one solve; never shared between solves."""

    def __init__(self, sys: SystemSpec, cfg: SolveConfig):
        self.sys = sys
        self.cfg = cfg
        self.inner_total = 0
        self.history: list[PointPair] = []

    def inner(self, f, t0: complex, tol: float, cap: int | None = None) -> complex:
        cfg = self.cfg
        out = muller_solve(f, t0, cap or cfg.inner_cap, cfg.digits, cfg.deviation, tol)
        self.inner_total += out.iterations
        return out.x_final


def _roles(sys: SystemSpec, n: int, cfg: SolveConfig):
    if cfg.alternate_order and n % 2 == 0:
        return sys.f2, sys.f1, 1
    return sys.f1, sys.f2, 0


def solve(sys: SystemSpec, start: PointPair, cfg: SolveConfig | None = None) -> RootResult:
    """Find a root of ``(sys.f1, sys.f2)`` with the two-dimensional Muller method.

    ``cfg.variant`` selects M1 or M2. Precondition and swap flags are applied
    to a working copy of the system; the reported residuals are those of the
    working system, listed in the original equation order.
    Failures (degenerate geometry, evaluation failure, cap) are reported
    through ``exit_reason`` rather than raised.
    """
    cfg = cfg or SolveConfig()
    if cfg.variant not in (Variant.M1, Variant.M2):
        raise ValueError(f"solver2d handles M1/M2, got {cfg.variant}")
    work = sys
    if cfg.precondition is not None:
        work = apply_precondition(work, cfg.precondition)
    if cfg.swap_equations:
        work = work.swapped()
    start = PointPair(start.x, start.y)
    run = _Run(work, cfg)

    def finish(p, v, n, reason, tol, msg=""):
        r1, r2 = abs(v[0]), abs(v[1])
        if cfg.swap_equations:
            r1, r2 = r2, r1
        return RootResult(p, r1, r2, n, run.inner_total, reason, tol, msg,
                          history=tuple(run.history))

    try:
        pts = list(seed_points(start, cfg.deviation))
        vals = [work.evaluate(p.x, p.y) for p in pts]
    except EvaluationFailure as exc:
        return finish(start, (float("nan"),) * 2, 0, ExitReason.EVALUATION_FAILURE, float("nan"), str(exc))
    scale = max(abs(v) for pair in vals for v in pair)
    tol = cfg.tolerance_for(scale)
    step_tol = cfg.step_tol
    run.history.append(start)
    perturbed = False
    reseeds = 0

    for n in range(1, cfg.outer_cap + 1):
        fa, fb, k = _roles(work, n, cfg)
        p_n = pts[2]
        try:
            line = _zero_line(pts, vals, 1 - k, tol)
            if line is None:
                # the plane function is already zero on every stored sample, so
                # its zero line carries no information: exchange the roles
                fa, fb, k = fb, fa, 1 - k
                line = _zero_line(pts, vals, 1 - k, tol)
            if line is None:
                raise DegenerateGeometry("both functions vanish on the stored samples")
            new = _advance(run, fa, fb, line, p_n, cfg, tol)
            new, new_vals = _evaluate_backtracking(work, new, p_n)
        except DegenerateGeometry as exc:
            # iterates that line up (e.g. along a straight zero set of the
            # other function) leave the plane undetermined: rebuild the
            # triangle around the newest point and carry on
            if reseeds < MAX_RESEEDS:
                reseeds += 1
                step = pts[2].distance(pts[1])
                dev = cfg.deviation * min(1.0, max(step / abs(cfg.deviation), 1e-3))
                try:
                    pts = list(seed_points(pts[2], dev))
                    vals = [work.evaluate(p.x, p.y) for p in pts]
                except EvaluationFailure as exc2:
                    return finish(p_n, vals[2], n, ExitReason.EVALUATION_FAILURE, tol, str(exc2))
                continue
            fb_res = _fallback(run, work, pts[2], vals[2], pts[1], tol, step_tol, force=True)
            if fb_res is not None:
                p, v, settled = fb_res
                reason = (ExitReason.STEP_BELOW_TOLERANCE if settled
                          else ExitReason.ONE_FUNCTION_ZERO_FALLBACK)
                return finish(p, v, n, reason, tol, str(exc))
            return finish(p_n, vals[2], n - 1, ExitReason.DEGENERATE_GEOMETRY, tol, str(exc))
        except EvaluationFailure as exc:
            return finish(p_n, vals[2], n - 1, ExitReason.EVALUATION_FAILURE, tol, str(exc))

        acc = _accept_tol(pts + [new], vals + [new_vals], tol, step_tol)
        # stagnation: the new iterate repeats one of the stored ones
        if any(new.distance(p) < 10.0 ** (-cfg.digits - 2) for p in pts) and \
                max(abs(new_vals[0]), abs(new_vals[1])) > acc:
            if perturbed:
                return finish(new, new_vals, n, ExitReason.OUTER_CAP_REACHED, tol,
                              "iterates cycle after perturbation")
            perturbed = True
            d = cfg.deviation / 10
            new = PointPair(new.x + d, new.y + d)
            try:
                new_vals = work.evaluate(new.x, new.y)
            except EvaluationFailure as exc:
                return finish(p_n, vals[2], n, ExitReason.EVALUATION_FAILURE, tol, str(exc))

        run.history.append(new)
        pts = [pts[1], pts[2], new]
        vals = [vals[1], vals[2], new_vals]
        dx, dy = abs(new.x - p_n.x), abs(new.y - p_n.y)
        r1, r2 = abs(new_vals[0]), abs(new_vals[1])
        log.debug("n=%d p=(%s, %s) |F1|=%.3g |F2|=%.3g", n, new.x, new.y, r1, r2)
        if dx < step_tol and dy < step_tol and max(r1, r2) <= acc:
            return finish(new, new_vals, n, ExitReason.STEP_BELOW_TOLERANCE, acc)
        fb_res = _fallback(run, work, new, new_vals, p_n, tol, step_tol)
        if fb_res is not None:
            p, v, _ = fb_res
            return finish(p, v, n, ExitReason.ONE_FUNCTION_ZERO_FALLBACK, tol)

    return finish(pts[2], vals[2], cfg.outer_cap, ExitReason.OUTER_CAP_REACHED, tol)


def _accept_tol(pts, vals, tol: float, step_tol: float) -> float:
    """Residual bound for accepting a converged step.

    ``tol`` plus what a point within ``step_tol`` of the root can leave
    behind, estimated from difference quotients between the stored samples.
    """
    grad = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[i].distance(pts[j])
            if d > 0:
                for k in (0, 1):
                    grad = max(grad, abs(vals[i][k] - vals[j][k]) / d)
    return tol + step_tol * grad


def _evaluate_backtracking(work: SystemSpec, new: PointPair, p_n: PointPair):
    """Evaluate at ``new``, halving the step towards ``p_n`` if that fails."""
    for _ in range(MAX_BACKTRACK):
        try:
            return new, work.evaluate(new.x, new.y)
        except EvaluationFailure:
            new = PointPair((new.x + p_n.x) / 2, (new.y + p_n.y) / 2)
    return new, work.evaluate(new.x, new.y)


def _zero_line(pts, vals, k: int, tol: float):
    """Zero line of the plane through component ``k`` of the samples, or None if uninformative."""
    f = tuple(v[k] for v in vals)
    if max(abs(v) for v in f) <= tol:
        return None
    try:
        return intersect_zero(fit_plane(IterateTriple(*pts, f)))
    except DegenerateGeometry:
        return None


def _advance(run: _Run, fa, fb, line: LineRelation, p_n: PointPair,
             cfg: SolveConfig, tol: float) -> PointPair:
    """One outer step: 1D solve of ``fa`` along the line, then fix the other coordinate."""
    if line.orientation is Orientation.Y_OF_X:
        t = run.inner(lambda s: fa(s, line(s)), p_n.x, tol)
        if cfg.variant is Variant.M1:
            return PointPair(t, line(t))
        u = run.inner(lambda s: fb(t, s), p_n.y, tol)
        return PointPair(t, u)
    t = run.inner(lambda s: fa(line(s), s), p_n.y, tol)
    if cfg.variant is Variant.M1:
        return PointPair(line(t), t)
    u = run.inner(lambda s: fb(s, t), p_n.x, tol)
    return PointPair(u, t)


def _fallback(run: _Run, work: SystemSpec, p: PointPair, v, prev: PointPair,
              tol: float, step_tol: float, force: bool = False):
    """Freeze the settled coordinate and solve the unsettled equation alone.

    Fires when one residual is within tolerance while the other exceeds it
    by ``FALLBACK_RATIO``, and exactly one coordinate has stopped moving
    (``force`` skips the movement test, used when the geometry collapsed).
    Returns ``(point, values, settled)`` or ``None``; ``settled`` means the
    extra solve moved the point by less than the step tolerance and both
    residuals are within tolerance.
    """
    r1, r2 = abs(v[0]), abs(v[1])
    if r1 <= tol and (r2 > FALLBACK_RATIO * tol or force):
        f_open = work.f2
    elif r2 <= tol and (r1 > FALLBACK_RATIO * tol or force):
        f_open = work.f1
    else:
        return None
    x_done = abs(p.x - prev.x) < step_tol
    y_done = abs(p.y - prev.y) < step_tol
    if not force and x_done == y_done:
        return None
    if force and x_done == y_done:
        x_done = abs(p.x - prev.x) <= abs(p.y - prev.y)
    cap = min(max(run.cfg.outer_cap, run.cfg.inner_cap), 100)
    try:
        if x_done:
            y = run.inner(lambda s: f_open(p.x, s), p.y, tol, cap)
            q = PointPair(p.x, y)
        else:
            x = run.inner(lambda s: f_open(s, p.y), p.x, tol, cap)
            q = PointPair(x, p.y)
        vals = work.evaluate(q.x, q.y)
    except (DegenerateGeometry, EvaluationFailure):
        return None
    run.history.append(q)
    settled = q.distance(p) < step_tol and max(abs(vals[0]), abs(vals[1])) <= tol
    return q, vals, settled
