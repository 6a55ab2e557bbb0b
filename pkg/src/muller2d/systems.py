"""Preset systems with their published roots and starting points.

Names ``S1`` .. ``S7`` are the elementary and special-function test systems,
``EX1`` the two-HeunC example, ``RW`` the Regge-Wheeler quasi-normal-mode
system (variables omega, l) and ``KERR`` the rotating black-hole system with
coefficients rounded to four digits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .core import (
    ExitReason,
    KnownRoot,
    PointPair,
    RootResult,
    SolveConfig,
    SystemSpec,
    Variant,
)
from .heunc import HeunParams, heunc_eval, heunc_log_derivative
from .specfun import bessel_j, hankel1, hyp1f1_1_3, legendre_gate

PI = math.pi
LN2 = math.log(2.0)
LNPI = math.log(PI)
QNM_PRECONDITION = ((1, 1), (1, -1))


def _kr(x, y, label, tol=1e-9):
    return KnownRoot(PointPair(x, y), label, tol)


# --- elementary systems -----------------------------------------------------

def _s1():
    def f1(x, y):
        return y * y + 3 * x - 5 + x * x

    def f2(x, y):
        return x * x + 3 * y - 1

    def jac(x, y):
        return (3 + 2 * x, 2 * y), (2 * x, 3 + 0j)

    roots = (
        _kr(1.1890465736, -0.1379439181, "S1-root-1"),
        _kr(0.8214691720 + 3.5201983985j, 4.2389950548 - 1.9278229759j, "S1-root-2"),
        _kr(0.8214691720 - 3.5201983985j, 4.2389950548 + 1.9278229759j, "S1-root-3"),
    )
    starts = (PointPair(1.689, -0.637), PointPair(1.321 + 3.520j, 3.738 - 1.927j),
              PointPair(1.321 - 3.520j, 3.738 + 1.927j))
    return SystemSpec("S1", f1, f2, roots, starts, jac, "y^2 + 3x - 5 + x^2 = 0, x^2 + 3y - 1 = 0")


def _s2():
    def f1(x, y):
        return x * (1 - x) + 4 * y - 12

    def f2(x, y):
        return (x - 2) ** 2 + (2 * y - 3) ** 2 - 25

    def jac(x, y):
        return (1 - 2 * x, 4 + 0j), (2 * (x - 2), 4 * (2 * y - 3))

    roots = (
        _kr(-1.0, 3.5, "S2-root-1"),
        _kr(2.5469464699, 3.9849974627, "S2-root-2"),
        _kr(0.2265267650 + 4.3352949767j, -1.7424987313 - 0.5927935709j, "S2-root-3"),
    )
    starts = (PointPair(-0.5, 3), PointPair(3.046, 3.484), PointPair(0.726 + 4.335j, -2.242 - 0.592j))
    return SystemSpec("S2", f1, f2, roots, starts, jac, "x(1-x) + 4y = 12, (x-2)^2 + (2y-3)^2 = 25")


def _s3():
    def f1(x, y):
        return y - cmath.sin(x) / 4 - cmath.cos(y) / 4

    def f2(x, y):
        return 5 * x * x - y * y

    def jac(x, y):
        return (-cmath.cos(x) / 4, 1 + cmath.sin(y) / 4), (10 * x, -2 * y)

    roots = (
        _kr(0.1212419114, 0.2711051557, "S3-root-1"),
        _kr(-0.9222203725 + 1.4764038337j, -2.062147443 + 3.3013393343j, "S3-root-2"),
        _kr(0.9685241736 - 1.6351708695j, -2.1656858901 + 3.6563532190j, "S3-root-3"),
    )
    starts = (PointPair(0.621, -0.228), PointPair(-0.422 + 1.476j, -2.562 + 3.301j),
              PointPair(1.468 - 1.635j, -2.665 + 3.656j))
    return SystemSpec("S3", f1, f2, roots, starts, jac, "y - sin(x)/4 - cos(y)/4 = 0, 5x^2 - y^2 = 0")


# The seven-root catalog reached from (4.4-5.0i, 8.5-16i) solves this system.
S4_CATALOG_START = PointPair(4.4 - 5.0j, 8.5 - 16j)


def _s4():
    def f1(x, y):
        return cmath.exp(-3 * x) * cmath.cos(y) + x

    def f2(x, y):
        return x * x - 3 * y * x + y * y

    def jac(x, y):
        e = cmath.exp(-3 * x)
        return (-3 * e * cmath.cos(y) + 1, -e * cmath.sin(y)), (2 * x - 3 * y, 2 * y - 3 * x)

    roots = (
        _kr(-0.5600551872, -1.4662435158, "S4-root-1"),
        _kr(0.3487096094 - 0.4633971546j, 0.9129336096 - 1.213189501j, "S4-root-2"),
        _kr(0.3487096094 + 0.4633971546j, 0.9129336096 + 1.2131895010j, "S4-r0"),
        _kr(3.0248444374 - 4.3689275542j, 7.9191455477 - 11.4380008313j, "S4-r1"),
        _kr(0.1632674377 + 0.6065137375j, 0.0623626119 + 0.2316676331j, "S4-r2+"),
        _kr(0.1632674377 - 0.6065137375j, 0.0623626119 - 0.2316676331j, "S4-r2-"),
        _kr(1.1119158619 - 1.8296636950j, 2.9110335191 - 4.7901217415j, "S4-r3"),
        _kr(4.0158133827 - 5.6039287836j, 10.5135359284 - 14.6712760260j, "S4-r4"),
        _kr(-5.3999170768, -14.1371664435, "S4-r5"),
    )
    starts = (PointPair(-0.35, -1.05), PointPair(0.55 - 0.6j, 1.14 - 1j), S4_CATALOG_START)
    return SystemSpec("S4", f1, f2, roots, starts, jac,
                      "exp(-3x) cos(y) + x = 0, x^2 - 3yx + y^2 = 0",
                      residual_rtol=1e-9)


S4_CATALOG = ("S4-r0", "S4-r1", "S4-r2+", "S4-r2-", "S4-r3", "S4-r4", "S4-r5")
S5_COMPLEX_START = PointPair(2.27 + 0.001j, 1.27)
S5_REAL_START = PointPair(0.5, 0.5)


def _s5():
    def f1(x, y):
        return cmath.log(x * x + y * y) - cmath.sin(y * x) - LN2 + LNPI

    def f2(x, y):
        return cmath.exp(x - y) + cmath.cos(y * x)

    def jac(x, y):
        r = x * x + y * y
        c, s = cmath.cos(x * y), cmath.sin(x * y)
        e = cmath.exp(x - y)
        return (2 * x / r - y * c, 2 * y / r - x * c), (e - y * s, -e - x * s)

    roots = (
        _kr(0.2129109625 - 2.4380400935j, -1.3216238026 - 4.6551486236j, "S5-r0"),
        _kr(0.9203224533 + 0.7487874838j, 1.4188731053 - 0.5453380689j, "S5-r1+"),
        _kr(0.9203224533 - 0.7487874838j, 1.4188731053 + 0.5453380689j, "S5-r1-"),
        _kr(-1.6645201248 + 1.380553001j, 1.66452012482 + 1.38055300197j, "S5-r2"),
    )
    return SystemSpec("S5", f1, f2, roots, (S5_COMPLEX_START, S5_REAL_START), jac,
                      "ln(x^2+y^2) - sin(xy) - ln 2 + ln pi = 0, exp(x-y) + cos(xy) = 0")


# --- special-function systems ---------------------------------------------

def _s6():
    def f1(x, y):
        return x * x - y + 5 * cmath.sin(x - 2)

    def f2(x, y):
        return bessel_j(3, y) + 5 * x - 3

    def jac(x, y):
        j2, j3 = bessel_j(2, y), bessel_j(3, y)
        return (2 * x + 5 * cmath.cos(x - 2), -1 + 0j), (5 + 0j, j2 - 3 / y * j3)

    roots = (
        _kr(0.6863031247, -4.3646459533, "S6-root-1"),
        _kr(5.8404591703 - 3.0854927956j, -10.6712592035 + 5.7445552813j, "S6-root-2"),
        _kr(-4.9297777922 - 1.1922443124j, 17.4620338366 + 5.7870418188j, "S6-root-3"),
    )
    starts = (PointPair(1.2 + 0.09j, -5.5 + 0.01j), PointPair(7.2 - 3.6j, -11.9 + 5.001j),
              PointPair(-5.1 - 1.006j, 16.0 + 5.51j))
    return SystemSpec("S6", f1, f2, roots, starts, jac, "x^2 - y + 5 sin(x-2) = 0, J_3(y) + 5x - 3 = 0")


def _hyp_prime(u: complex) -> complex:
    """d/du 1F1(1; 3; u) = sum 2 k u^(k-1) / (k+2)!."""
    if abs(u) <= 2:
        term = 2 / 6  # k = 1
        total = term
        k = 1
        while True:
            term *= u * (k + 1) / (k * (k + 3))
            k += 1
            total += term
            if k > 10 and abs(term) < 1e-17 * abs(total):
                return total
    e = cmath.exp(u)
    return 2 * (e - 1) / (u * u) - 4 * (e - 1 - u) / u ** 3


def _s7():
    def f1(x, y):
        return x ** 7 - cmath.exp(y) + hyp1f1_1_3(x * x - 3 * x)

    def f2(x, y):
        return hankel1(7, y + 1 - x)

    def jac(x, y):
        w = y + 1 - x
        dh = hankel1(6, w) - 7 / w * hankel1(7, w)
        return (7 * x ** 6 + (2 * x - 3) * _hyp_prime(x * x - 3 * x), -cmath.exp(y)), (-dh, dh)

    roots = (
        _kr(0.8288091244 - 0.4046494664j, -2.3507488745 - 4.6830120304j, "S7-root-1"),
        _kr(0.2656154750 - 0.8757700972j, -2.9139425238 - 5.1541326612j, "S7-root-2"),
    )
    starts = (PointPair(1.1 - 0.45j, -2.4 - 4.2j), PointPair(0.5 - 0.87j, -3.21 - 5.14j))
    return SystemSpec("S7", f1, f2, roots, starts, jac,
                      "x^7 - exp(y) + 1F1(1;3;x^2-3x) = 0, H1_7(y+1-x) = 0")


# --- Heun systems -----------------------------------------------------------

def _ex1():
    def f1(x, y):
        return heunc_eval(HeunParams(-1.3 * x, 2 * y, 1 + x, 4 * x, 1 - y - 2 * x * x), 0.75 * y).value

    def f2(x, y):
        p = HeunParams(9j * x, 2.3j * x + y, 2j * x - 1, -1.9 * x * (1j + y),
                       2 * x * x + 2j * x - 1.3 * y - 0.2)
        return heunc_eval(p, y).value

    roots = (
        _kr(2.1991016319 + 0.2140611770j, 1.2022265008 + 0.3588153273j, "EX1-root-1"),
        _kr(2.2328663235 + 0.0141132493j, 0.9593217208 + 0.0508289979j, "EX1-root-2"),
    )
    starts = (PointPair(2.1 + 0.45j, 1.25 + 0.3j), PointPair(2.23 + 0.01j, 0.93 + 0.1j))
    return SystemSpec("EX1", f1, f2, roots, starts, None, "two confluent Heun functions",
                      residual_rtol=1e-4)


def kerr_f1(x: complex, y: complex) -> complex:
    e = cmath.exp(1j * (4.7124 - cmath.phase(x)))
    p = HeunParams(-1.9996j * x, 2.0002j * x + 1.0, 0.0002j * x - 1.0, -1.9996 * x * (1j + x),
                   1.9995 * x * x + 1.9998j * x + 0.5 - y)
    return heunc_eval(p, -110.02 * e + 1.0).value * (110.00 * e) ** (2.00 + 0.0002j * x)


def kerr_f2(x: complex, y: complex) -> complex:
    # HeunC'/HeunC; the first term has beta = -1 and is taken as a limit
    pa = HeunParams(0.04 * x, -1.0, 1.0, -0.04 * x, 0.5 - y + 0.02 * x - 0.0001 * x * x)
    pb = HeunParams(-0.04 * x, 1.0, -1.0, 0.04 * x, 0.5 - y - 0.02 * x - 0.0001 * x * x)
    return heunc_log_derivative(pa, 0.25) + heunc_log_derivative(pb, 0.75)


def _kerr():
    roots = (
        _kr(0.4965436315 + 0.1849695292j, 1.9999915063 - 0.7347653e-5j, "KERR-root-1", 1e-3),
        _kr(0.3495869222 + 1.0503235984j, 2.0000392386 - 0.2937407e-4j, "KERR-root-2", 1e-3),
        _kr(0.0608496029 + 5.1191008697j, 2.0010479243 - 0.2491318e-4j, "KERR-root-3", 1e-3),
    )
    starts = (PointPair(0.49 + 0.18j, 2.001 + 0.1j), PointPair(0.17 + 0.97j, 2.001 + 0.1j),
              PointPair(0.069 + 5.146j, 2.001 + 0.051j))
    return SystemSpec("KERR", kerr_f1, kerr_f2, roots, starts, None,
                      "Teukolsky radial/angular system, coefficients rounded to 4 digits",
                      residual_rtol=1e-2)


# --- Regge-Wheeler quasi-normal modes --------------------------------------

@dataclass(frozen=True)
class QnmParams:
    """Regge-Wheeler setup in units 2M = 1.

    ``omega`` and ``l`` are only used as defaults for seeds; the system
    itself treats them as the unknowns.
    """

    l: complex = 2.0
    omega: complex = 0.7473433689 + 0.177924631j
    theta: float = PI - 1e-7
    r_abs: float = 20.0
    epsilon_phase: float = 0.0

    def __post_init__(self):
        if not 0 < self.theta < PI:
            raise ValueError("theta must lie in (0, pi)")
        if not self.r_abs > 0:
            raise ValueError("r_abs must be positive")
        if not abs(self.epsilon_phase) < 1:
            raise ValueError("|epsilon_phase| must be below 1")


# Frequencies listed for l = 2 (mode 8 is the epsilon > 0 branch, sign follows epsilon).
QNM_TABLE = {
    0: 0.7473433689 + 0.177924631j,
    1: 0.6934219938 + 0.547829750j,
    2: 0.6021069092 + 0.956553966j,
    3: 0.5030099241 + 1.410296405j,
    4: 0.4150291596 + 1.893689782j,
    5: 0.3385988064 + 2.391216108j,
    6: 0.2665046810 + 2.895821253j,
    7: 0.1856446684 + 3.407682345j,
    8: 0.030649006 + 3.996823690j,
    9: 0.1265270180 + 4.605289542j,
    10: 0.1531069502 + 5.121653272j,
}
# comparison values from the phase-amplitude method (mode 8: Leaver)
QNM_ANDERSSON = {
    0: 0.747343368 + 0.177924630j,
    1: 0.693421994 + 0.547829714j,
    2: 0.602106910 + 0.956553966j,
    3: 0.503009924 + 1.410296404j,
    4: 0.415029160 + 1.893689782j,
    5: 0.338598806 + 2.391216108j,
    6: 0.266504680 + 2.895821252j,
    7: 0.185644672 + 3.407682344j,
    8: 0 + 3.998000j,
    9: 0.126527010 + 4.605289530j,
    10: 0.153106926 + 5.121653234j,
}


def qnm_tolerance(n: int) -> float:
    return 1e-6 if n <= 4 else 1e-5


def rw_argument(omega: complex, q: QnmParams) -> complex:
    """``1 - |r| exp(-i((pi + eps)/2 + arg omega))`` with the principal arg."""
    return 1 - q.r_abs * cmath.exp(-1j * ((PI + q.epsilon_phase) / 2 + cmath.phase(omega)))


def rw_f1(omega: complex, l: complex, q: QnmParams) -> complex:
    return legendre_gate(l, math.cos(q.theta))


def rw_f2(omega: complex, l: complex, q: QnmParams) -> complex:
    w2 = omega * omega
    p = HeunParams(-2j * omega, 2j * omega, 4, -2 * w2, 4 - l - l * l + 2 * w2)
    return heunc_eval(p, rw_argument(omega, q)).value


def build_rw_system(q: QnmParams | None = None) -> SystemSpec:
    """Regge-Wheeler system in the unknowns ``(omega, l)``."""
    q = q or QnmParams()

    def f1(w, l):
        return rw_f1(w, l, q)

    def f2(w, l):
        return rw_f2(w, l, q)

    roots = []
    if q.epsilon_phase == 0 and q.r_abs == 20.0 and q.theta == PI - 1e-7:
        roots = [_kr(w, 2.0, f"RW-mode-{n}", qnm_tolerance(n))
                 for n, w in QNM_TABLE.items() if n != 8]
    starts = tuple(PointPair(w + 0.01 + 0.01j, 2.1 + 0.01j) for n, w in QNM_TABLE.items() if n != 8)
    return SystemSpec("RW", f1, f2, tuple(roots), starts, None,
                      f"Regge-Wheeler QNM system, eps = {q.epsilon_phase:g}, |r| = {q.r_abs:g}",
                      residual_rtol=1e-4)


SPURIOUS_L = "SpuriousLMode"


def l_integer_gap(res: RootResult) -> float:
    l = res.root.y
    return abs(l - round(l.real))


def balanced_precondition(sys: SystemSpec, start: PointPair):
    """``((1, s), (1, -s))`` with ``s = |F1| / |F2|`` at ``start``.

    F2 (a HeunC value far from the origin) is typically 4 to 6 orders of
    magnitude smaller than the Legendre factor, which makes the first plane
    fits of the plain sum/difference system nearly blind to F2.
    """
    f1, f2 = sys.evaluate(start.x, start.y)
    s = abs(f1) / abs(f2) if f2 != 0 and f1 != 0 else 1.0
    return (1, s), (1, -s)


def solve_qnm_mode(seed_omega: complex, q: QnmParams | None = None,
                   cfg: SolveConfig | None = None, balance: bool = True,
                   l_seed: complex = 2.1 + 0.01j) -> RootResult:
    """Solve ``[F1 + s F2, F1 - s F2] = 0`` from ``(seed_omega, l_seed)``.

    ``s = 1`` when ``balance`` is false; otherwise ``s`` equalises the two
    functions at the start (see :func:`balanced_precondition`). A matrix
    already set in ``cfg.precondition`` is used as given. Flags
    ``SpuriousLMode`` when the converged ``l`` lies below 1.5 (the order-2
    Ferrers factor vanishes identically at l = 0 and 1).
    """
    from .baselines import broyden_solve
    from .solver2d import solve

    q = q or QnmParams()
    cfg = cfg or SolveConfig(digits=12, inner_cap=5, outer_cap=60)
    sys = build_rw_system(q)
    start = PointPair(seed_omega, l_seed)
    if cfg.precondition is None:
        pre = balanced_precondition(sys, start) if balance else QNM_PRECONDITION
        cfg = cfg.with_(precondition=pre)
    if cfg.variant is Variant.BROYDEN:
        res = broyden_solve(sys, start, cfg)
    else:
        res = solve(sys, start, cfg)
    flags = list(res.flags)
    if res.root.y.real < 1.5:
        flags.append(SPURIOUS_L)
    msg = (res.message + "; " if res.message else "") + f"|l - round(l)| = {l_integer_gap(res):.3g}"
    return replace(res, flags=tuple(flags), message=msg)


# --- published benchmark cells ----------------------------------------------

@dataclass(frozen=True)
class TableCell:
    """One (system, start) row with per-method iteration counts.

    ``counts`` maps a method name to ``(N, P)``; P is None for Newton and
    Broyden. ``order_dependent`` lists the methods whose root depends on the
    equation order; ``swap`` means the equations were exchanged.
    """

    system: str
    start: PointPair
    root: str
    counts: dict = field(default_factory=dict)
    swap: bool = False
    order_dependent: frozenset = frozenset()

    @property
    def methods(self) -> tuple[str, ...]:
        return tuple(self.counts)


def _cell(system, start, root, newton, broyden, m2, m1, swap=False, stars=()):
    counts = {}
    if newton is not None:
        counts["newton"] = (newton, None)
    counts["broyden"] = (broyden, None)
    counts["m2"] = m2
    counts["m1"] = m1
    return TableCell(system, start, root, counts, swap, frozenset(stars))


def _p(x, y):
    return PointPair(x, y)


APPENDIX_CELLS = (
    _cell("S1", _p(1.689, -0.637), "S1-root-1", 8, 10, (10, 3), (8, 3), stars=("m2",)),
    _cell("S1", _p(1.321 + 3.520j, 3.738 - 1.927j), "S1-root-2", 8, 10, (12, 3), (8, 3)),
    _cell("S1", _p(1.321 - 3.520j, 3.738 + 1.927j), "S1-root-3", 8, 10, (12, 3), (8, 3)),
    _cell("S2", _p(-0.5, 3), "S2-root-1", 8, 10, (9, 4), (9, 3)),
    _cell("S2", _p(3.046, 3.484), "S2-root-2", 8, 10, (10, 3), (9, 3)),
    _cell("S2", _p(0.726 + 4.335j, -2.242 - 0.592j), "S2-root-3", 8, 9, (7, 6), (8, 6)),
    _cell("S3", _p(0.621, -0.228), "S3-root-1", 10, 13, (9, 3), (8, 4), swap=True, stars=("m1",)),
    _cell("S3", _p(-0.422 + 1.476j, -2.562 + 3.301j), "S3-root-2", 9, 11, (8, 4), (11, 3), stars=("m1",)),
    _cell("S3", _p(1.468 - 1.635j, -2.665 + 3.656j), "S3-root-3", 9, 11, (7, 5), (11, 3), stars=("m1",)),
    _cell("S4", _p(-0.35, -1.05), "S4-root-1", 11, 12, (7, 4), (10, 4)),
    _cell("S4", _p(0.55 - 0.6j, 1.14 - 1j), "S4-root-2", 10, 12, (7, 6), (13, 3), stars=("m1",)),
    _cell("S6", _p(1.2 + 0.09j, -5.5 + 0.01j), "S6-root-1", 9, 11, (9, 4), (11, 3), swap=True, stars=("m2",)),
    _cell("S6", _p(7.2 - 3.6j, -11.9 + 5.001j), "S6-root-2", 11, 14, (10, 3), (14, 4), stars=("m2", "m1")),
    _cell("S6", _p(-5.1 - 1.006j, 16.0 + 5.51j), "S6-root-3", 11, 15, (11, 3), (13, 3)),
    _cell("S7", _p(1.1 - 0.45j, -2.4 - 4.2j), "S7-root-1", 10, 13, (11, 3), (12, 3)),
    _cell("S7", _p(0.5 - 0.87j, -3.21 - 5.14j), "S7-root-2", 10, 13, (8, 4), (11, 3), stars=("m2", "m1")),
)

HEUN_CELLS = (
    _cell("EX1", _p(2.1 + 0.45j, 1.25 + 0.3j), "EX1-root-1", None, 14, (11, 5), (12, 15), stars=("m2", "m1")),
    _cell("EX1", _p(2.23 + 0.01j, 0.93 + 0.1j), "EX1-root-2", None, 23, (10, 15), (17, 15), stars=("m2", "m1")),
    _cell("KERR", _p(0.49 + 0.18j, 2.001 + 0.1j), "KERR-root-1", None, 23, (9, 5), (11, 4), stars=("m2", "m1")),
    _cell("KERR", _p(0.17 + 0.97j, 2.001 + 0.1j), "KERR-root-2", None, 34, (12, 5), (15, 5), stars=("m2", "m1")),
    _cell("KERR", _p(0.069 + 5.146j, 2.001 + 0.051j), "KERR-root-3", None, 36, (11, 5), (17, 5), stars=("m2", "m1")),
)


_BUILDERS = {
    "S1": _s1, "S2": _s2, "S3": _s3, "S4": _s4, "S5": _s5, "S6": _s6, "S7": _s7,
    "EX1": _ex1, "RW": build_rw_system, "KERR": _kerr,
}
PRESET_NAMES = tuple(_BUILDERS)


def get_system(name: str, q: Optional[QnmParams] = None) -> SystemSpec:
    key = name.upper()
    if key not in _BUILDERS:
        raise KeyError(f"unknown system {name!r}; choose from {', '.join(PRESET_NAMES)}")
    if key == "RW":
        return build_rw_system(q)
    return _BUILDERS[key]()


def catalog() -> list[SystemSpec]:
    """Every preset, in the order S1..S7, EX1, RW, KERR."""
    return [get_system(n) for n in PRESET_NAMES]


def find_root(sys: SystemSpec, label: str) -> KnownRoot:
    for kr in sys.known_roots:
        if kr.provenance == label:
            return kr
    raise KeyError(label)
