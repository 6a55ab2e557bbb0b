"""Comparison methods: generalised Newton and finite-difference "Broyden".

The Broyden variant recomputes a forward-difference Jacobian at every
iterate instead of applying rank-one updates, i.e. it is finite-difference
Newton. The name is kept because that is how the benchmark tables label it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .core import (
    EvaluationFailure,
    ExitReason,
    Matrix2,
    PointPair,
    RootResult,
    SingularJacobian,
    SolveConfig,
    SystemSpec,
    apply_precondition,
    is_finite,
)

EPS = 2.220446049250313e-16


class JacobianMethod(str, enum.Enum):
    ANALYTIC = "Analytic"
    FORWARD_DIFFERENCE = "ForwardDifference"


@dataclass(frozen=True)
class JacobianEstimate:
    j11: complex
    j12: complex
    j21: complex
    j22: complex
    method: JacobianMethod
    step: tuple[float, float] = (0.0, 0.0)

    @property
    def det(self) -> complex:
        return self.j11 * self.j22 - self.j12 * self.j21

    def solve(self, b1: complex, b2: complex, scale: float) -> tuple[complex, complex]:
        """Return ``J^-1 (b1, b2)``; raises SingularJacobian when ``|det J|`` is tiny."""
        entries = (self.j11, self.j12, self.j21, self.j22)
        if not all(is_finite(v) for v in entries):
            raise SingularJacobian("non-finite Jacobian entry")
        det = self.det
        if abs(det) < 1e-14 * scale or det == 0:
            raise SingularJacobian(f"|det J| = {abs(det):.3g} below threshold")
        return ((self.j22 * b1 - self.j12 * b2) / det,
                (self.j11 * b2 - self.j21 * b1) / det)


def forward_difference_jacobian(sys: SystemSpec, x: complex, y: complex,
                                f0: tuple[complex, complex]) -> JacobianEstimate:
    """Forward differences along the real direction of each coordinate.

    Step ``h = sqrt(eps) * (1 + |coordinate|)``. Assumes the functions are
    analytic, so one directional derivative gives the complex derivative.
    """
    hx = math.sqrt(EPS) * (1 + abs(x))
    hy = math.sqrt(EPS) * (1 + abs(y))
    try:
        fx = sys.evaluate(x + hx, y)
        fy = sys.evaluate(x, y + hy)
    except EvaluationFailure as exc:
        raise SingularJacobian(f"finite difference evaluation failed: {exc}") from exc
    jac = JacobianEstimate(
        (fx[0] - f0[0]) / hx, (fy[0] - f0[0]) / hy,
        (fx[1] - f0[1]) / hx, (fy[1] - f0[1]) / hy,
        JacobianMethod.FORWARD_DIFFERENCE, (hx, hy),
    )
    return jac


def analytic_jacobian(jac: Callable[[complex, complex], Matrix2], x, y) -> JacobianEstimate:
    (a, b), (c, d) = jac(x, y)
    return JacobianEstimate(complex(a), complex(b), complex(c), complex(d), JacobianMethod.ANALYTIC)


def _newton_type(sys: SystemSpec, start: PointPair, cfg: SolveConfig,
                 jac: Optional[Callable], use_fd: bool) -> RootResult:
    work = sys if jac is None else replace(sys, jacobian=jac)
    if cfg.precondition is not None:
        work = apply_precondition(work, cfg.precondition)
    if cfg.swap_equations:
        work = work.swapped()
    jac = None if use_fd else work.jacobian
    x, y = start.x, start.y
    history = [PointPair(x, y)]

    def finish(v, n, reason, tol, msg=""):
        r1, r2 = abs(v[0]), abs(v[1])
        if cfg.swap_equations:
            r1, r2 = r2, r1
        return RootResult(PointPair(x, y), r1, r2, n, 0, reason, tol, msg, history=tuple(history))

    try:
        v = work.evaluate(x, y)
    except EvaluationFailure as exc:
        return finish((math.nan, math.nan), 0, ExitReason.EVALUATION_FAILURE, math.nan, str(exc))
    tol = cfg.tolerance_for(max(abs(v[0]), abs(v[1])))
    step_tol = cfg.step_tol

    for n in range(1, cfg.outer_cap + 1):
        try:
            if jac is None:
                J = forward_difference_jacobian(work, x, y, v)
            else:
                J = analytic_jacobian(jac, x, y)
            scale = max(abs(J.j11), abs(J.j12), abs(J.j21), abs(J.j22)) ** 2
            dx, dy = J.solve(v[0], v[1], scale)
        except OverflowError as exc:
            return finish(v, n - 1, ExitReason.SINGULAR_JACOBIAN, tol, f"Jacobian overflow: {exc}")
        except SingularJacobian as exc:
            return finish(v, n - 1, ExitReason.SINGULAR_JACOBIAN, tol, str(exc))
        x, y = x - dx, y - dy
        history.append(PointPair(x, y))
        try:
            v = work.evaluate(x, y)
        except EvaluationFailure as exc:
            return finish((math.nan, math.nan), n, ExitReason.EVALUATION_FAILURE, tol, str(exc))
        if abs(dx) < step_tol and abs(dy) < step_tol and max(abs(v[0]), abs(v[1])) <= tol:
            return finish(v, n, ExitReason.STEP_BELOW_TOLERANCE, tol)
    return finish(v, cfg.outer_cap, ExitReason.OUTER_CAP_REACHED, tol)


def newton_solve(sys: SystemSpec, start: PointPair, cfg: SolveConfig | None = None,
                 jac: Optional[Callable[[complex, complex], Matrix2]] = None) -> RootResult:
    """Plain Newton iteration ``(x, y) <- (x, y) - J^-1 F``.

    Uses ``jac`` if given, else ``sys.jacobian``, else forward differences.
    No damping or line search.
    """
    return _newton_type(sys, start, cfg or SolveConfig(variant="newton"), jac, use_fd=False)


def broyden_solve(sys: SystemSpec, start: PointPair, cfg: SolveConfig | None = None) -> RootResult:
    """Newton-type iteration with a fresh forward-difference Jacobian at every step."""
    return _newton_type(sys, start, cfg or SolveConfig(variant="broyden"), None, use_fd=True)
