"""Confluent Heun function HeunC(alpha, beta, gamma, delta, eta; z).

Convention (the one used by Maple): HeunC is the solution of

    y'' + (alpha + (beta+1)/z + (gamma+1)/(z-1)) y'
        + (mu/z + nu/(z-1)) y = 0,

    mu = (alpha - beta - gamma + alpha*beta - beta*gamma)/2 - eta,
    nu = (alpha + beta + gamma + alpha*gamma + beta*gamma)/2 + delta + eta,

that is analytic at z = 0 with HeunC(0) = 1. Away from the origin the
function is continued along an explicit path by re-expanding its Taylor
series (value and derivative carried at every waypoint); the branch cut
therefore sits on the ray z > 1 and values there depend on the detour side.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .core import RootFindingError, is_finite

EPS = 2.220446049250313e-16
DETOUR_RADIUS = 0.1
BLOCK_RADIUS = 0.05
MAX_STEPS = 10_000
MAX_TERMS = 120


class HeunError(RootFindingError):
    pass


class RecurrenceBreakdown(HeunError):
    """The local series at the origin does not exist (beta a negative integer)."""


class PathBlocked(HeunError):
    """Evaluation point too close to the singular point z = 1."""


class StepLimit(HeunError):
    """Continuation needed more re-expansions than allowed."""


@dataclass(frozen=True)
class HeunParams:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    eta: complex

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "eta"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @property
    def negative_integer_beta(self) -> int | None:
        """``N`` when ``beta = -N`` (N >= 1), else None."""
        b = self.beta
        if abs(b.imag) < 1e-12 and b.real < 0.5 and abs(b.real - round(b.real)) < 1e-12:
            return -round(b.real)
        return None

    def check(self):
        n = self.negative_integer_beta
        if n is not None:
            raise RecurrenceBreakdown(f"beta = {self.beta.real:g} is a negative integer; "
                                      "HeunC normalised to 1 at the origin does not exist")

    @property
    def mu(self) -> complex:
        a, b, g = self.alpha, self.beta, self.gamma
        return (a - b - g + a * b - b * g) / 2 - self.eta

    @property
    def nu(self) -> complex:
        a, b, g = self.alpha, self.beta, self.gamma
        return (a + b + g + a * g + b * g) / 2 + self.delta + self.eta

    def second_derivative(self, z: complex, y: complex, dy: complex) -> complex:
        """``y''`` from the ODE at a regular point."""
        a, b, g = self.alpha, self.beta, self.gamma
        p = a + (b + 1) / z + (g + 1) / (z - 1)
        q = self.mu / z + self.nu / (z - 1)
        return -p * dy - q * y

    def ode_residual(self, z: complex, y: complex, dy: complex, d2y: complex) -> complex:
        a, b, g = self.alpha, self.beta, self.gamma
        p = a + (b + 1) / z + (g + 1) / (z - 1)
        q = self.mu / z + self.nu / (z - 1)
        return d2y + p * dy + q * y


@dataclass(frozen=True)
class HeunEval:
    value: complex
    derivative: complex
    path: tuple[complex, ...] = field(default=(), repr=False)
    est_error: float = 0.0
    steps: int = 0


def _local_coeffs(p: HeunParams, c: complex):
    """Polynomial coefficients of z(z-1), Q(z), R(z) re-centred at ``c``.

    The ODE multiplied by z(z-1) reads z(z-1) y'' + Q y' + R y = 0.
    """
    a = p.alpha
    s = p.beta + p.gamma + 2 - a
    mn = p.mu + p.nu
    p20, p21 = c * (c - 1), 2 * c - 1
    q0 = a * c * c + s * c - (p.beta + 1)
    q1 = 2 * a * c + s
    q2 = a
    r0 = mn * c - p.mu
    r1 = mn
    return p20, p21, q0, q1, q2, r0, r1


def _sum_series(p: HeunParams, c: complex, h: complex, y0: complex, dy0: complex,
                order: int = 0):
    """Sum the Taylor series about ``c`` at ``c + h``.

    Works with scaled coefficients ``b_k = a_k h^k``. At the origin the local
    solution ``z^order (1 + ...)`` is summed and ``y0, dy0`` are ignored.
    Returns ``(value, derivative, rel_error, peak)`` where ``peak`` is the
    largest term, or ``None`` when the series has not converged within
    MAX_TERMS terms.
    """
    p20, p21, q0, q1, q2, r0, r1 = _local_coeffs(p, c)
    h2 = h * h
    h3 = h2 * h
    at_origin = c == 0
    if at_origin:
        bs = [0j] * order + [complex(h) ** order]
        val = bs[-1]
        der = order * bs[-1]
        k = order
    else:
        bs = [y0, dy0 * h]
        val = bs[0] + bs[1]
        der = bs[1]  # sum k b_k, divided by h at the end
        k = 0
    peak = max(abs(b) for b in bs)
    small = 0
    while True:
        if at_origin:
            # a_{k+1} (k+1)(-k-beta-1) = -([k(k-1) + q1 k + r0] a_k + [q2 (k-1) + r1] a_{k-1})
            den = (k + 1) * (-k - p.beta - 1)
            if den == 0:
                raise RecurrenceBreakdown("series recurrence denominator vanished")
            bkm1 = bs[k - 1] if k >= 1 else 0j
            nb = -((k * (k - 1) + q1 * k + r0) * h * bs[k]
                   + (q2 * (k - 1) + r1) * h2 * bkm1) / den
            idx = k + 1
        else:
            bkm1 = bs[k - 1] if k >= 1 else 0j
            nb = -((p21 * k + q0) * (k + 1) * h * bs[k + 1]
                   + (k * (k - 1) + q1 * k + r0) * h2 * bs[k]
                   + (q2 * (k - 1) + r1) * h3 * bkm1) / (p20 * (k + 2) * (k + 1))
            idx = k + 2
        bs.append(nb)
        val += nb
        der += idx * nb
        anb = abs(nb)
        if anb > peak:
            peak = anb
        if anb * idx <= 1e-17 * max(abs(val), abs(der), 1e-300):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        k += 1
        if idx >= MAX_TERMS or not math.isfinite(anb):
            return None
    tail = sum(abs(b) for b in bs[-3:])
    peak = max(peak, 1e-300)
    # error of this step relative to its largest term: tail plus rounding
    return val, der / h, tail / peak + EPS * len(bs), peak


def heunc_series(p: HeunParams, z: complex, center: complex = 0j,
                 init: tuple[complex, complex] = (1 + 0j, 0j)) -> HeunEval:
    """Single Taylor expansion of HeunC about ``center`` evaluated at ``z``.

    At ``center = 0`` the local solution normalised to 1 is used and ``init``
    is ignored; elsewhere ``init`` is the (value, derivative) at ``center``.
    ``|z - center|`` must stay below the distance to the nearest singular
    point (1 at the origin).
    """
    z, center = complex(z), complex(center)
    if center == 0:
        p.check()
        radius = 1.0
    else:
        radius = min(abs(center), abs(center - 1))
    h = z - center
    if abs(h) >= radius:
        raise ValueError(f"|z - center| = {abs(h):.3g} outside the convergence radius {radius:.3g}")
    if h == 0:
        if center == 0:
            return HeunEval(1 + 0j, -p.mu / (p.beta + 1), (0j,), 0.0, 0)
        return HeunEval(complex(init[0]), complex(init[1]), (center,), 0.0, 0)
    out = _sum_series(p, center, h, complex(init[0]), complex(init[1]))
    if out is None:
        raise StepLimit("Taylor series did not converge within the term budget")
    val, der, rel, peak = out
    return HeunEval(val, der, (center, z), rel * peak, 1)


def continuation_path(z: complex) -> list[complex]:
    """Waypoints from 0 to ``z``: straight, with a semicircular detour around 1.

    The detour (radius 0.1) is taken when the segment passes within 0.1 of 1
    before reaching ``z``. It runs on the side where the segment's closest
    point lies, so it is homotopic to the straight path; a segment running
    exactly through 1 detours through the upper half plane.
    """
    z = complex(z)
    if abs(z - 1) < BLOCK_RADIUS:
        raise PathBlocked(f"z = {z} lies within {BLOCK_RADIUS} of the singular point 1")
    if z == 0:
        return [0j]
    zz = abs(z) ** 2
    t_star = min(max((z.conjugate()).real / zz, 0.0), 1.0)
    near = t_star * z
    if abs(near - 1) >= DETOUR_RADIUS or t_star >= 1.0:
        # closest approach at the endpoint itself: the straight path is fine
        return [0j, z]
    # intersections of the line t*z with |w - 1| = R: |t z - 1|^2 = R^2
    a = zz
    b = -2 * z.real
    cc = 1 - DETOUR_RADIUS ** 2
    disc = max(b * b - 4 * a * cc, 0.0)
    t_in = (-b - math.sqrt(disc)) / (2 * a)
    t_out = (-b + math.sqrt(disc)) / (2 * a)
    entry = t_in * z
    th_in = cmath.phase(entry - 1)
    inside = abs(z - 1) < DETOUR_RADIUS
    th_out = cmath.phase((z - 1) if inside else (t_out * z - 1))
    # the arc must pass on the same side of 1 as the straight segment
    target = cmath.phase(near - 1) if abs(near - 1) > 1e-12 else math.pi / 2
    d_ccw = (th_out - th_in) % (2 * math.pi)
    through_ccw = ((target - th_in) % (2 * math.pi)) <= d_ccw
    sweep = d_ccw if through_ccw else d_ccw - 2 * math.pi
    n_arc = max(2, int(abs(sweep) / (math.pi / 8)) + 1)
    pts = [0j, entry]
    for j in range(1, n_arc + 1):
        pts.append(1 + DETOUR_RADIUS * cmath.exp(1j * (th_in + sweep * j / n_arc)))
    pts.append(z)
    return pts


def _step_limit(p: HeunParams, c: complex) -> float:
    """Largest re-expansion step allowed from ``c``."""
    dist = 1.0 if c == 0 else min(abs(c), abs(c - 1))
    frac = 0.5 if c == 0 else 0.4
    grow = 2.0 / (1.0 + abs(p.alpha) + math.sqrt(abs(p.mu) + abs(p.nu)) / max(abs(c), 1.0))
    return min(frac * dist, max(grow, 0.02))


def _origin_state(p: HeunParams, order: int) -> tuple[complex, complex]:
    if order == 0:
        return 1 + 0j, -p.mu / (p.beta + 1)
    return 0j, (1 + 0j if order == 1 else 0j)


def _validate_path(z: complex, path) -> list[complex]:
    if path is None:
        return continuation_path(z)
    path = [complex(w) for w in path]
    if path[0] != 0:
        raise ValueError("continuation path must start at 0")
    for w in path[1:]:
        if abs(w - 1) < BLOCK_RADIUS:
            raise PathBlocked(f"waypoint {w} within {BLOCK_RADIUS} of 1")
    return path


def _continue(p: HeunParams, z: complex, path: list[complex], order: int,
              step_scale: float = 1.0) -> HeunEval:
    if z == 0:
        y, dy = _origin_state(p, order)
        return HeunEval(y, dy, (0j,), 0.0, 0)
    c = 0j
    y = dy = 0j
    rel_err = 0.0
    steps = 0
    peak = 1.0
    visited = [0j]
    for target in path[1:]:
        while c != target:
            remaining = target - c
            hmax = _step_limit(p, c) * step_scale
            h = remaining if abs(remaining) <= hmax else remaining / abs(remaining) * hmax
            while True:
                out = _sum_series(p, c, h, y, dy, order)
                if out is not None:
                    val, der, rel, peak = out
                    # accept unless the terms cancel badly
                    if peak < 1e4 * max(abs(val), abs(der * h)) or abs(h) < 1e-3:
                        break
                h = h / 2
                if abs(h) < 1e-8:
                    raise StepLimit("continuation step collapsed")
            c = target if h == remaining else c + h
            y, dy = val, der
            rel_err += rel * peak / max(abs(val), abs(der * h), 1e-300)
            steps += 1
            if steps > MAX_STEPS:
                raise StepLimit(f"more than {MAX_STEPS} re-expansions")
            if not (is_finite(y) and is_finite(dy)):
                raise StepLimit("continuation overflowed")
        visited.append(c)
    # error relative to the local function scale, expressed in absolute terms
    return HeunEval(y, dy, tuple(visited), rel_err * max(peak, abs(y)), steps)


def heunc_eval(p: HeunParams, z: complex, path: list[complex] | None = None,
               step_scale: float = 1.0) -> HeunEval:
    """HeunC and its derivative at ``z`` by analytic continuation from 0.

    ``path`` overrides the default waypoints (first entry must be 0) and
    ``step_scale`` shrinks the re-expansion steps. Raises PathBlocked near
    z = 1, StepLimit after MAX_STEPS re-expansions and RecurrenceBreakdown
    when beta is a negative integer.
    """
    p.check()
    z = complex(z)
    return _continue(p, z, _validate_path(z, path), 0, step_scale)


def heunc_log_derivative(p: HeunParams, z: complex, path: list[complex] | None = None) -> complex:
    """``HeunC'(z) / HeunC(z)``, normalisation free.

    For ``beta = -N`` the function normalised to 1 at the origin does not
    exist; the ratio is then taken for its limit as beta approaches -N, the
    local solution ``z^N (1 + O(z))`` that stays analytic at the origin.
    """
    z = complex(z)
    n = p.negative_integer_beta or 0
    e = _continue(p, z, _validate_path(z, path), n)
    if e.value == 0:
        raise HeunError("HeunC vanishes; logarithmic derivative undefined")
    return e.derivative / e.value


def heunc(alpha, beta, gamma, delta, eta, z) -> complex:
    """Value of HeunC with the six-argument signature used in the systems."""
    return heunc_eval(HeunParams(alpha, beta, gamma, delta, eta), z).value


def heunc_prime(alpha, beta, gamma, delta, eta, z) -> complex:
    """z-derivative of HeunC."""
    return heunc_eval(HeunParams(alpha, beta, gamma, delta, eta), z).derivative
