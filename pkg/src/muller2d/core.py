"""Shared value types, solver configuration, result records and residuals."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

Complex2 = Callable[[complex, complex], complex]
Matrix2 = tuple[tuple[complex, complex], tuple[complex, complex]]


class RootFindingError(Exception):
    """Base class for all errors raised by this package."""


class EvaluationFailure(RootFindingError):
    """A function returned a non-finite value or raised during evaluation."""


class DegenerateGeometry(RootFindingError):
    """Interpolation geometry collapsed (collinear samples, vanishing denominators)."""


class SingularJacobian(RootFindingError):
    """Newton-type Jacobian is numerically singular or non-finite."""


class Variant(str, enum.Enum):
    M1 = "m1"
    M2 = "m2"
    NEWTON = "newton"
    BROYDEN = "broyden"


class ExitReason(str, enum.Enum):
    STEP_BELOW_TOLERANCE = "StepBelowTolerance"
    ONE_FUNCTION_ZERO_FALLBACK = "OneFunctionZeroFallback"
    OUTER_CAP_REACHED = "OuterCapReached"
    DEGENERATE_GEOMETRY = "DegenerateGeometry"
    EVALUATION_FAILURE = "EvaluationFailure"
    SINGULAR_JACOBIAN = "SingularJacobian"


@dataclass(frozen=True)
class PointPair:
    x: complex
    y: complex

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def distance(self, other: "PointPair") -> float:
        return max(abs(self.x - other.x), abs(self.y - other.y))

    def is_finite(self) -> bool:
        return is_finite(self.x) and is_finite(self.y)


def is_finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def check_matrix(m: Matrix2) -> Matrix2:
    (a1, b1), (a2, b2) = m
    m = ((complex(a1), complex(b1)), (complex(a2), complex(b2)))
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    norm = max(abs(v) for row in m for v in row)
    if norm == 0 or abs(det) <= 1e-14 * norm * norm:
        raise ValueError(f"preconditioning matrix is singular: {m}")
    return m


@dataclass(frozen=True)
class SolveConfig:
    """Knobs shared by every solver.

    ``residual_tol=None`` selects the relative default
    ``10**-digits * (1 + scale)`` where ``scale`` is the largest function
    magnitude over the seed points.
    """

    digits: int = 12
    inner_cap: int = 5
    outer_cap: int = 100
    deviation: complex = 1e-3
    variant: Variant = Variant.M1
    swap_equations: bool = False
    alternate_order: bool = False
    precondition: Optional[Matrix2] = None
    residual_tol: Optional[float] = None

    def __post_init__(self):
        if not 4 <= self.digits <= 15:
            raise ValueError(f"digits must lie in [4, 15], got {self.digits}")
        if not 1 <= self.inner_cap <= 100:
            raise ValueError(f"inner_cap must lie in [1, 100], got {self.inner_cap}")
        if self.outer_cap < 1:
            raise ValueError(f"outer_cap must be >= 1, got {self.outer_cap}")
        object.__setattr__(self, "deviation", complex(self.deviation))
        if self.deviation == 0:
            raise ValueError("deviation must be nonzero")
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.precondition is not None:
            object.__setattr__(self, "precondition", check_matrix(self.precondition))
        if self.residual_tol is not None and not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive")

    @property
    def step_tol(self) -> float:
        return 10.0 ** (-self.digits)

    def tolerance_for(self, scale: float) -> float:
        if self.residual_tol is not None:
            return self.residual_tol
        return self.step_tol * (1.0 + scale)

    def with_(self, **changes) -> "SolveConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class RootResult:
    root: PointPair
    residual_f1: float
    residual_f2: float
    outer_iterations: int
    inner_iterations_total: int
    exit_reason: ExitReason
    residual_tol: float
    message: str = ""
    flags: tuple[str, ...] = ()
    history: tuple[PointPair, ...] = field(default=(), repr=False, compare=False)

    @property
    def converged(self) -> bool:
        if self.exit_reason is ExitReason.STEP_BELOW_TOLERANCE:
            return True
        return (
            self.exit_reason is ExitReason.ONE_FUNCTION_ZERO_FALLBACK
            and max(self.residual_f1, self.residual_f2) <= self.residual_tol
        )


@dataclass(frozen=True)
class KnownRoot:
    pair: PointPair
    provenance: str
    tolerance: float = 1e-9

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def matches(self, p: PointPair) -> bool:
        return p.distance(self.pair) < self.tolerance


@dataclass(frozen=True)
class SystemSpec:
    """Two complex functions of two complex variables plus catalog metadata.

    ``jacobian``, when given, returns ``((dF1/dx, dF1/dy), (dF2/dx, dF2/dy))``.
    ``residual_rtol`` is the relative residual bound used when checking the
    known roots (loose for systems whose published digits are rounded).
    """

    name: str
    f1: Complex2
    f2: Complex2
    known_roots: tuple[KnownRoot, ...] = ()
    recommended_starts: tuple[PointPair, ...] = ()
    jacobian: Optional[Callable[[complex, complex], Matrix2]] = None
    description: str = ""
    residual_rtol: float = 1e-9

    def evaluate(self, x: complex, y: complex) -> tuple[complex, complex]:
        return safe_eval(self.f1, x, y), safe_eval(self.f2, x, y)

    def swapped(self) -> "SystemSpec":
        jac = None
        if self.jacobian is not None:
            orig = self.jacobian

            def jac(x, y):
                r1, r2 = orig(x, y)
                return r2, r1

        return replace(self, f1=self.f2, f2=self.f1, jacobian=jac, name=self.name + "[swapped]")

    def match_root(self, p: PointPair) -> Optional[KnownRoot]:
        for kr in self.known_roots:
            if kr.matches(p):
                return kr
        return None


def safe_eval(f: Complex2, x: complex, y: complex) -> complex:
    try:
        v = complex(f(x, y))
    except EvaluationFailure:
        raise
    except (OverflowError, ZeroDivisionError, ValueError, RootFindingError) as exc:
        raise EvaluationFailure(f"evaluation failed at ({x}, {y}): {exc}") from exc
    if not is_finite(v):
        raise EvaluationFailure(f"non-finite value {v} at ({x}, {y})")
    return v


def residual(sys: SystemSpec, p: PointPair) -> tuple[float, float]:
    """Return ``(|F1(p)|, |F2(p)|)``; raises EvaluationFailure on non-finite output."""
    v1, v2 = sys.evaluate(p.x, p.y)
    return abs(v1), abs(v2)


def relative_residual(sys: SystemSpec, p: PointPair, h: float = 1e-3) -> tuple[float, float]:
    """``|F_k(p)|`` divided by the local slope and by ``1 + max(|x|, |y|)``.

    The slope is the larger one-sided difference quotient over a step ``h``
    in either variable, so the number approximates the relative distance of
    ``p`` from the zero set of ``F_k``.
    """
    v = sys.evaluate(p.x, p.y)
    vx = sys.evaluate(p.x + h, p.y)
    vy = sys.evaluate(p.x, p.y + h)
    size = 1 + max(abs(p.x), abs(p.y))
    out = []
    for k in range(2):
        slope = max(abs(vx[k] - v[k]), abs(vy[k] - v[k])) / h
        out.append(abs(v[k]) / (slope * size) if slope > 0 else (0.0 if v[k] == 0 else math.inf))
    return out[0], out[1]


def apply_precondition(sys: SystemSpec, m: Matrix2) -> SystemSpec:
    """Replace (F1, F2) by the independent combinations ``m @ (F1, F2)``."""
    (a1, b1), (a2, b2) = check_matrix(m)
    f1, f2 = sys.f1, sys.f2

    def g1(x, y):
        return a1 * f1(x, y) + b1 * f2(x, y)

    def g2(x, y):
        return a2 * f1(x, y) + b2 * f2(x, y)

    jac = None
    if sys.jacobian is not None:
        orig = sys.jacobian

        def jac(x, y):
            (j11, j12), (j21, j22) = orig(x, y)
            return (
                (a1 * j11 + b1 * j21, a1 * j12 + b1 * j22),
                (a2 * j11 + b2 * j21, a2 * j12 + b2 * j22),
            )

    return replace(sys, f1=g1, f2=g2, jacobian=jac)


def parse_complex(text: str) -> complex:
    """Parse literals such as ``0.17+0.97i``, ``-5.4``, ``3i`` or ``1e-3-2e-4i``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    s = s.replace("I", "i").replace("j", "i")
    if s.endswith("i"):
        body = s[:-1]
        # split on the last sign that is not part of an exponent
        cut = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                cut = k
                break
        if cut is None:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:cut], body[cut:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        try:
            return complex(float(re_part), float(im_part))
        except ValueError as exc:
            raise ValueError(f"malformed complex literal {text!r}") from exc
    try:
        return complex(float(s), 0.0)
    except ValueError as exc:
        raise ValueError(f"malformed complex literal {text!r}") from exc


def parse_pair(text: str) -> PointPair:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'x,y', got {text!r}")
    return PointPair(parse_complex(parts[0]), parse_complex(parts[1]))


def format_complex(z: complex, digits: int = 12) -> str:
    re = f"{z.real:.{digits}g}"
    if z.imag == 0:
        return re
    sign = "+" if z.imag >= 0 or math.copysign(1, z.imag) > 0 else "-"
    return f"{re}{sign}{abs(z.imag):.{digits}g}i"


def principal_arg(z: complex) -> float:
    return cmath.phase(z)


def max_abs(values: Sequence[complex]) -> float:
    return max(abs(v) for v in values)
