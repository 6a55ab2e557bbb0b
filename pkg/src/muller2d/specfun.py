"""Special functions for the benchmark systems.

Integer-order Bessel J/Y and Hankel H1 of complex argument, the confluent
hypergeometric 1F1(1; 3; z), and the Ferrers function of general complex
degree and order 2. Everything works in double precision inside documented
envelopes and raises :class:`EnvelopeError` outside them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import psi

from .core import RootFindingError

EULER_GAMMA = float(np.euler_gamma)
BESSEL_MAX_ABS = 60.0
HYP_MAX_ABS = 200.0
SERIES_SWITCH = 4.0


class EnvelopeError(RootFindingError, ValueError):
    """Argument lies outside the region where the evaluator is accurate."""


@dataclass(frozen=True)
class SeriesAccuracy:
    terms_used: int
    tail_bound: float


def _check_bessel(n: int, z: complex):
    if n < 0 or int(n) != n:
        raise ValueError(f"order must be a nonnegative integer, got {n}")
    if abs(z) > BESSEL_MAX_ABS:
        raise EnvelopeError(f"|z| = {abs(z):.3g} exceeds the Bessel envelope {BESSEL_MAX_ABS}")


def bessel_j_series(n: int, z: complex, tol: float = 1e-17) -> tuple[complex, SeriesAccuracy]:
    """Ascending series ``sum (-1)^k (z/2)^(n+2k) / (k! (n+k)!)``."""
    z = complex(z)
    half = z / 2
    term = half ** n / math.factorial(n)
    total = term
    w = -half * half
    k = 0
    peak = abs(term)
    while True:
        k += 1
        term *= w / (k * (n + k))
        total += term
        peak = max(peak, abs(term))
        # once terms decrease monotonically the next one bounds the tail
        if k > abs(half) and abs(term) <= tol * max(abs(total), 1e-300):
            break
        if k > 500:
            break
    return total, SeriesAccuracy(k + 1, abs(term) + 1e-16 * peak)


def _miller(z: complex, nmax: int) -> list[complex]:
    """``[J_0(z), ..., J_nmax(z)]`` by backward recurrence (Miller's algorithm)."""
    az = abs(z)
    m = int(max(nmax, az)) + 20 + int(math.sqrt(40 * max(nmax, az, 1.0)))
    m += m % 2
    vals = [0j] * (m + 2)
    vals[m] = 1e-300
    two_over_z = 2 / z
    for k in range(m, 0, -1):
        vals[k - 1] = k * two_over_z * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > 1e250:
            for j in range(k - 1, m + 1):
                vals[j] *= 1e-250
    # normalise with e^{-iz} = J0 + 2 sum (-i)^k J_k (or e^{iz} for Im z < 0)
    unit = -1j if z.imag >= 0 else 1j
    s = vals[0]
    pw = 1 + 0j
    for k in range(1, m + 1):
        pw *= unit
        s += 2 * pw * vals[k]
    norm = cmath.exp(unit * z) / s
    return [v * norm for v in vals[: nmax + 2]]


def bessel_j_all(nmax: int, z: complex) -> list[complex]:
    """``[J_0(z), ..., J_{nmax+1}(z)]``."""
    z = complex(z)
    if z == 0:
        return [1 + 0j] + [0j] * (nmax + 1)
    if abs(z) <= SERIES_SWITCH:
        return [bessel_j_series(k, z)[0] for k in range(nmax + 2)]
    return _miller(z, nmax)


def bessel_j(n: int, z: complex) -> complex:
    """Bessel function of the first kind ``J_n(z)`` for integer ``n >= 0``, ``|z| <= 60``."""
    z = complex(z)
    _check_bessel(n, z)
    if abs(z) <= SERIES_SWITCH:
        return bessel_j_series(n, z)[0]
    return _miller(z, n)[n]


def _bessel_y_series(n: int, z: complex) -> complex:
    half = z / 2
    log_half = cmath.log(half)
    finite = 0j
    if n > 0:
        for k in range(n):
            finite += math.factorial(n - k - 1) / math.factorial(k) * half ** (2 * k - n)
    w = -half * half
    term = half ** n / math.factorial(n)
    total = term * (psi(1.0) + psi(n + 1.0))
    k = 0
    while True:
        k += 1
        term *= w / (k * (n + k))
        inc = term * (psi(k + 1.0) + psi(n + k + 1.0))
        total += inc
        if k > abs(half) and abs(inc) <= 1e-17 * max(abs(total), 1e-300):
            break
        if k > 500:
            break
    jn = bessel_j_series(n, z)[0]
    return (-finite + 2 * log_half * jn - total) / math.pi


def _bessel_y01_neumann(z: complex, js: list[complex]) -> tuple[complex, complex]:
    # Y0 = (2/pi)(ln(z/2)+gamma) J0 - (4/pi) sum (-1)^k J_2k / k
    # Y1 = -Y0' = -(2/(pi z)) J0 + (2/pi)(ln(z/2)+gamma) J1
    #      + (2/pi) sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
    lg = cmath.log(z / 2) + EULER_GAMMA
    s0 = 0j
    s1 = 0j
    k = 1
    while 2 * k + 1 < len(js):
        sign = -1 if k % 2 else 1
        s0 += sign * js[2 * k] / k
        s1 += sign * (js[2 * k - 1] - js[2 * k + 1]) / k
        k += 1
    y0 = (2 / math.pi) * (lg * js[0] - 2 * s0)
    y1 = -(2 / (math.pi * z)) * js[0] + (2 / math.pi) * (lg * js[1] + s1)
    return y0, y1


def bessel_y(n: int, z: complex) -> complex:
    """Bessel function of the second kind ``Y_n(z)`` (principal branch of the log)."""
    z = complex(z)
    _check_bessel(n, z)
    if z == 0:
        raise EnvelopeError("Y_n has a logarithmic singularity at z = 0")
    if abs(z) <= SERIES_SWITCH:
        return _bessel_y_series(n, z)
    js = _miller(z, max(n, int(abs(z)) + 40))
    y0, y1 = _bessel_y01_neumann(z, js)
    if n == 0:
        return y0
    ym, y = y0, y1
    for k in range(1, n):
        ym, y = y, (2 * k / z) * y - ym
    return y


def hankel1(n: int, z: complex) -> complex:
    """Hankel function of the first kind ``H1_n(z) = J_n(z) + i Y_n(z)``.

    For large positive ``Im z`` the sum cancels and relative accuracy drops
    roughly by ``exp(2 Im z)``.
    """
    z = complex(z)
    if z == 0:
        raise EnvelopeError("H1_n is singular at z = 0")
    return bessel_j(n, z) + 1j * bessel_y(n, z)


def bessel_jy_derivatives(n: int, z: complex) -> tuple[complex, complex, complex, complex]:
    """``(J_n, J_n', Y_n, Y_n')`` via the standard recurrences."""
    z = complex(z)
    jn = bessel_j(n, z)
    yn = bessel_y(n, z)
    jp1 = bessel_j(n + 1, z)
    yp1 = bessel_y(n + 1, z)
    # C_n' = (n/z) C_n - C_{n+1}
    return jn, n / z * jn - jp1, yn, n / z * yn - yp1


def hyp1f1_1_3(z: complex) -> complex:
    """Confluent hypergeometric ``1F1(1; 3; z) = sum_k 2 z^k / (k+2)!``.

    Series for small ``|z|``; the closed form ``2(e^z - 1 - z)/z^2`` elsewhere.
    """
    z = complex(z)
    if abs(z) > HYP_MAX_ABS:
        raise EnvelopeError(f"|z| = {abs(z):.3g} exceeds the 1F1 envelope {HYP_MAX_ABS}")
    if abs(z) <= 2.0:
        return hyp1f1_1_3_series(z)[0]
    return hyp1f1_1_3_closed(z)


def hyp1f1_1_3_series(z: complex) -> tuple[complex, SeriesAccuracy]:
    term = 1 + 0j
    total = term
    k = 0
    while True:
        term *= z / (k + 3)
        k += 1
        total += term
        if k > abs(z) and abs(term) <= 1e-17 * max(abs(total), 1e-300):
            break
        if k > 1000:
            break
    return total, SeriesAccuracy(k + 1, abs(term))


def hyp1f1_1_3_closed(z: complex) -> complex:
    z = complex(z)
    return 2 * (cmath.exp(z) - 1 - z) / (z * z)


# --- Ferrers function of order 2 ------------------------------------------

def _hyp_coeffs(nu: complex, t: float, want_log: bool):
    """Series pieces of F(-nu, nu+1; 1; t) and its logarithmic partner.

    Returns ``(y, y', y'', s, s', s'')`` where ``y = F`` and ``s`` is the
    non-log part of the second Frobenius solution ``y ln t + s``
    (derivatives in ``t``). Coefficients of ``s`` are d/de of the shifted
    coefficients, formed directly so integer ``nu`` stays finite.
    """
    a, b = -nu, nu + 1
    c, dc = 1 + 0j, 0j
    y = yp = ypp = 0j
    s = sp = spp = 0j
    tk = 1.0  # t^k
    k = 0
    while True:
        y += c * tk
        s += dc * tk
        if k >= 1:
            yp += k * c * tk / t
            sp += k * dc * tk / t
        if k >= 2:
            ypp += k * (k - 1) * c * tk / (t * t)
            spp += k * (k - 1) * dc * tk / (t * t)
        k1 = k + 1
        r = (a + k) * (b + k) / (k1 * k1)
        dr = ((a + k) + (b + k)) / (k1 * k1) - 2 * (a + k) * (b + k) / k1 ** 3
        c, dc = c * r, dc * r + c * dr if want_log else 0j
        tk *= t
        k = k1
        mag = (abs(c) + abs(dc)) * tk * k * k
        if k > 8 and mag <= 1e-17 * (abs(y) + abs(ypp) * t * t + abs(s) + 1e-300):
            break
        if k > 4000:
            break
    return y, yp, ypp, s, sp, spp


def _ferrers_bracket(nu: complex, x: float) -> complex:
    """``G = (1 - x^2) P_nu''(x) * u / (1 - u)`` with ``u = (1+x)/2`` on the lower half.

    On the upper half returns ``(1 - x^2) P_nu''(x)`` directly.
    """
    nu = complex(nu)
    if x >= 0:
        w = (1 - x) / 2
        _, _, ypp, *_ = _hyp_coeffs(nu, w, False)
        return (1 - x * x) * ypp / 4
    u = (1 + x) / 2
    y, yp, ypp, s, sp, spp = _hyp_coeffs(nu, u, True)
    sin_term = cmath.sin(math.pi * nu) / math.pi
    A = 2 * sin_term * (EULER_GAMMA + complex(psi(1 + nu))) + cmath.cos(math.pi * nu)
    B = sin_term
    lu = math.log(u)
    # u^2 d^2/du^2 of (A y + B (y ln u + s))
    u2y2 = A * u * u * ypp + B * (u * u * ypp * lu + 2 * u * yp - y + u * u * spp)
    return u2y2


def ferrers_p_order2(nu: complex, x: float) -> complex:
    """Ferrers function ``P_nu^2(x)`` on ``-1 < x < 1`` (no Condon-Shortley phase).

    Equals ``(1 - x^2) d^2/dx^2 P_nu(x)``; e.g. ``P_2^2 = 3(1-x^2)``,
    ``P_3^2 = 15 x (1-x^2)``.
    """
    x = float(x)
    if not -1 < x < 1:
        raise EnvelopeError("Ferrers functions are defined on -1 < x < 1")
    g = _ferrers_bracket(nu, x)
    if x >= 0:
        return g
    u = (1 + x) / 2
    return g * (1 - u) / u


def legendre_gate(nu: complex, x: float) -> complex:
    """``(x - 1)(x + 1) P_nu^2(x)``, finite and accurate as ``x -> -1``."""
    x = float(x)
    if not -1 < x < 1:
        raise EnvelopeError("Ferrers functions are defined on -1 < x < 1")
    g = _ferrers_bracket(nu, x)
    if x >= 0:
        return (x * x - 1) * g
    u = (1 + x) / 2
    return -4 * (1 - u) ** 2 * g
