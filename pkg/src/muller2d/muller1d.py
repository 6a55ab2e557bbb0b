"""One-dimensional Muller iteration for complex functions of one variable."""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Callable, Optional

from .core import DegenerateGeometry, EvaluationFailure, RootFindingError, is_finite


MAX_BACKTRACK = 6


class Muller1DExit(str, enum.Enum):
    STEP_TOL = "StepTol"
    FUNCTION_TOL = "FunctionTol"
    CAP_P = "CapP"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class MullerStep:
    q: complex
    A: complex
    B: complex
    C: complex
    D_plus: complex
    D_minus: complex
    next: complex

    @property
    def D_max(self) -> complex:
        return self.D_plus if abs(self.D_plus) >= abs(self.D_minus) else self.D_minus


@dataclass(frozen=True)
class Muller1DOutcome:
    x_final: complex
    f_final: complex
    iterations: int
    exit: Muller1DExit
    trace: tuple[complex, ...] = ()


def muller_step(x2: complex, x1: complex, x0: complex,
                f2: complex, f1: complex, f0: complex) -> MullerStep:
    """One Muller update through ``(x2, f2), (x1, f1), (x0, f0)``; ``x0`` is newest.

    The parabola root adjacent to ``x0`` is selected by dividing by the
    larger-modulus denominator ``B +/- sqrt(B^2 - 4AC)`` (ties pick ``+``).
    """
    h = x1 - x2
    if h == 0 or x0 == x1:
        raise DegenerateGeometry("coincident abscissae in Muller step")
    q = (x0 - x1) / h
    qq = q * q
    A = q * f0 - q * (1 + q) * f1 + qq * f2
    B = (2 * q + 1) * f0 - (1 + q) ** 2 * f1 + qq * f2
    C = (1 + q) * f0
    root = cmath.sqrt(B * B - 4 * A * C)
    d_plus, d_minus = B + root, B - root
    d_max = d_plus if abs(d_plus) >= abs(d_minus) else d_minus
    if d_max == 0:
        raise DegenerateGeometry("vanishing Muller denominator")
    nxt = x0 - 2 * (x0 - x1) * C / d_max
    if not is_finite(nxt):
        raise DegenerateGeometry("non-finite Muller step")
    return MullerStep(q, A, B, C, d_plus, d_minus, nxt)


def _value(f, x):
    try:
        v = complex(f(x))
    except EvaluationFailure:
        raise
    except (OverflowError, ZeroDivisionError, ValueError, RootFindingError) as exc:
        raise EvaluationFailure(f"evaluation failed at {x}: {exc}") from exc
    if not is_finite(v):
        raise EvaluationFailure(f"non-finite value {v} at {x}")
    return v


def muller_solve(f: Callable[[complex], complex], x_in: complex, cap: int = 20,
                 digits: int = 12, deviation: complex = 1e-3,
                 residual_tol: Optional[float] = None,
                 keep_trace: bool = False) -> Muller1DOutcome:
    """Run Muller's method from ``x_in`` for at most ``cap`` steps.

    The seed triple is ``x_in - deviation, x_in, x_in + deviation``. The
    iteration stops when two consecutive iterates differ by less than
    ``10**-digits``, when ``|f| <= residual_tol``, or after ``cap`` steps.
    A step landing where ``f`` cannot be evaluated is halved back towards
    the newest iterate a few times before giving up. Raises
    DegenerateGeometry when the interpolant has no usable root and
    EvaluationFailure when ``f`` keeps failing.
    """
    x_in = complex(x_in)
    deviation = complex(deviation)
    step_tol = 10.0 ** (-digits)
    xs = [x_in - deviation, x_in, x_in + deviation]
    fs = [_value(f, x) for x in xs]
    if residual_tol is None:
        residual_tol = step_tol * (1.0 + max(abs(v) for v in fs))
    trace = list(xs) if keep_trace else []

    best = min(range(3), key=lambda k: abs(fs[k]))
    if abs(fs[best]) <= residual_tol:
        return Muller1DOutcome(xs[best], fs[best], 0, Muller1DExit.FUNCTION_TOL, tuple(trace))

    x2, x1, x0 = xs
    f2, f1, f0 = fs
    for j in range(1, cap + 1):
        step = muller_step(x2, x1, x0, f2, f1, f0)
        xn = step.next
        fn = None
        for _ in range(MAX_BACKTRACK):
            try:
                fn = _value(f, xn)
                break
            except EvaluationFailure:
                # e.g. stepped onto a singularity: pull back towards x0
                xn = (xn + x0) / 2
        if fn is None:
            fn = _value(f, xn)
        if keep_trace:
            trace.append(xn)
        x2, x1, x0 = x1, x0, xn
        f2, f1, f0 = f1, f0, fn
        if abs(x0 - x1) < step_tol:
            return Muller1DOutcome(x0, f0, j, Muller1DExit.STEP_TOL, tuple(trace))
        if abs(f0) <= residual_tol:
            return Muller1DOutcome(x0, f0, j, Muller1DExit.FUNCTION_TOL, tuple(trace))
    return Muller1DOutcome(x0, f0, cap, Muller1DExit.CAP_P, tuple(trace))


def empirical_order(xs) -> float:
    """Approximate order of convergence from the last four iterates.

    ``ln|d3/d2| / ln|d2/d1|`` with ``d_k`` the successive differences; needs
    no knowledge of the root.
    """
    if len(xs) < 4:
        raise ValueError("need at least four iterates")
    a, b, c, d = xs[-4:]
    d1, d2, d3 = abs(b - a), abs(c - b), abs(d - c)
    if min(d1, d2, d3) == 0 or d2 == d1:
        raise ValueError("iterates repeat; order undefined")
    return cmath.log(d3 / d2).real / cmath.log(d2 / d1).real
