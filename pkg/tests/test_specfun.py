import cmath
import math
import time

import mpmath
import pytest

from muller2d.specfun import (
    EnvelopeError,
    bessel_j,
    bessel_jy_derivatives,
    bessel_y,
    ferrers_p_order2,
    hankel1,
    hyp1f1_1_3,
    hyp1f1_1_3_closed,
    hyp1f1_1_3_series,
    legendre_gate,
)

GRID = [0.3, 1.0, 2 + 1j, -3.5 + 0.4j, 5 - 2j, 0.7j, 12 + 3j, -20.5 + 1j, 40 - 0.5j, 3.9 + 3.9j]
ORDERS = [0, 1, 3, 7]


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize("n", ORDERS)
@pytest.mark.parametrize("z", GRID)
def test_bessel_j_against_mpmath(n, z):
    want = complex(mpmath.besselj(n, z))
    assert abs(bessel_j(n, z) - want) <= 1e-12 * max(1.0, abs(want)) * (1 + abs(z))


@pytest.mark.parametrize("n", ORDERS)
@pytest.mark.parametrize("z", GRID)
def test_bessel_y_against_mpmath(n, z):
    want = complex(mpmath.bessely(n, z))
    assert abs(bessel_y(n, z) - want) <= 1e-10 * max(1.0, abs(want))


def test_bessel_examples():
    assert bessel_j(0, 0) == 1
    assert bessel_j(3, 0) == 0
    assert abs(bessel_j(3, 1) - 0.019563353983) < 1e-12
    h = hankel1(0, 1)
    assert abs(h - (0.7651976866 + 0.0882569642j)) < 1e-9
    assert hankel1(2, 3.0).imag == pytest.approx(bessel_y(2, 3.0).real, rel=1e-14)


@pytest.mark.parametrize("n", [0, 1, 3, 7])
def test_wronskian(n):
    z = 2 + 1j
    j, jp, y, yp = bessel_jy_derivatives(n, z)
    assert abs(j * yp - jp * y - 2 / (math.pi * z)) < 1e-10


@pytest.mark.parametrize("n", [1, 3, 6])
@pytest.mark.parametrize("z", GRID)
def test_bessel_recurrence(n, z):
    lhs = bessel_j(n - 1, z) + bessel_j(n + 1, z)
    rhs = 2 * n / z * bessel_j(n, z)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_bessel_envelope():
    with pytest.raises(EnvelopeError):
        bessel_j(2, 61)
    with pytest.raises(EnvelopeError):
        hankel1(1, 0)
    with pytest.raises(ValueError):
        bessel_j(-1, 1)


HYP_GRID = [0, 0.5, 1, -1, 2 + 2j, -10 + 3j, 25 - 7j, 1.9j, -3.1, 100 + 50j]


@pytest.mark.parametrize("z", HYP_GRID)
def test_hyp1f1_against_mpmath(z):
    want = complex(mpmath.hyp1f1(1, 3, z))
    assert _rel(hyp1f1_1_3(z), want) < 1e-12


@pytest.mark.parametrize("z", [0.5, 1.5 - 0.5j, -1.9, 1.2j])
def test_hyp1f1_series_vs_closed_form(z):
    assert _rel(hyp1f1_1_3_series(z)[0], hyp1f1_1_3_closed(z)) < 1e-12


def test_hyp1f1_small_z():
    assert hyp1f1_1_3(0) == 1
    z = 1e-4
    assert abs(hyp1f1_1_3(z) - (1 + z / 3)) < 1e-8
    # 1F1(1; 3; 1) = 2(e - 2)
    assert abs(hyp1f1_1_3(1) - 2 * (math.e - 2)) < 1e-15
    with pytest.raises(EnvelopeError):
        hyp1f1_1_3(300)


def test_ferrers_closed_forms():
    assert abs(ferrers_p_order2(2, 0.5) - 2.25) < 1e-12
    assert abs(ferrers_p_order2(3, 0.2) - 2.88) < 1e-12
    assert abs(ferrers_p_order2(0, 0.3)) < 1e-12
    assert abs(ferrers_p_order2(1, -0.3)) < 1e-12
    for x in (-0.9, -0.4, 0.1, 0.8):
        assert abs(ferrers_p_order2(2, x) - 3 * (1 - x * x)) < 1e-11
        assert abs(ferrers_p_order2(4, x) - 7.5 * (7 * x * x - 1) * (1 - x * x)) < 1e-10


@pytest.mark.parametrize("nu", [2.3, 1.5 + 0.4j, 4.7 - 0.2j, 0.6])
@pytest.mark.parametrize("x", [-0.95, -0.5, 0.0, 0.4, 0.9])
def test_ferrers_general_degree_against_mpmath(nu, x):
    # mpmath type 2 is the Ferrers function; its phase is (-1)^m, i.e. the same for m = 2
    want = complex(mpmath.legenp(nu, 2, x, type=2))
    assert abs(ferrers_p_order2(nu, x) - want) <= 1e-10 * max(1.0, abs(want))


def test_legendre_gate_integer_zeros():
    x = math.cos(math.pi - 1e-7)
    for l in range(2, 11):
        # a sign change straddles each integer degree
        a = legendre_gate(l - 1e-6, x)
        b = legendre_gate(l + 1e-6, x)
        assert (a * b.conjugate()).real < 0
    assert abs(legendre_gate(2, x)) < 1e-6
    with pytest.raises(EnvelopeError):
        legendre_gate(2.5, 1.0)


def test_grid_runtime():
    t0 = time.perf_counter()
    for z in GRID:
        for n in ORDERS:
            hankel1(n, z)
        hyp1f1_1_3(z)
    assert time.perf_counter() - t0 < 10
