import cmath

import pytest
from hypothesis import assume, given, settings, strategies as st

from muller2d.core import DegenerateGeometry, EvaluationFailure
from muller2d.muller1d import Muller1DExit, empirical_order, muller_solve, muller_step

box = st.builds(complex, st.floats(-10, 10), st.floats(-10, 10))


@settings(max_examples=1000, deadline=None)
@given(r1=box, r2=box, a=box, x0=box, x1=box, x2=box)
def test_quadratic_exactness(r1, r2, a, x0, x1, x2):
    # the interpolating parabola of a quadratic is the quadratic itself
    assume(abs(r1 - r2) > 0.1 and abs(a) > 0.1)
    pts = (x2, x1, x0)
    assume(min(abs(pts[i] - pts[j]) for i in range(3) for j in range(i)) > 1e-2)

    def f(x):
        return a * (x - r1) * (x - r2)

    step = muller_step(x2, x1, x0, f(x2), f(x1), f(x0))
    err = min(abs(step.next - r1), abs(step.next - r2))
    assert err <= 1e-12 * max(abs(r1), abs(r2), 1.0)


def test_step_takes_larger_denominator():
    f = lambda x: x * x - 2
    s = muller_step(0.5, 1.0, 1.5, f(0.5), f(1.0), f(1.5))
    assert abs(s.D_max) == max(abs(s.D_plus), abs(s.D_minus))
    assert s.next == pytest.approx(2 ** 0.5, abs=1e-14)


def test_step_rejects_coincident_points():
    with pytest.raises(DegenerateGeometry):
        muller_step(1.0, 1.0, 2.0, 0, 0, 1)


def test_complex_root_from_real_seed():
    out = muller_solve(lambda x: x * x + 1, 0.5)
    assert out.exit in (Muller1DExit.STEP_TOL, Muller1DExit.FUNCTION_TOL)
    assert abs(abs(out.x_final) - 1) < 1e-12 and abs(out.x_final.imag) == pytest.approx(1)


def test_cubic_roots_of_unity():
    for seed in (0.9, -0.4 + 0.8j, -0.4 - 0.8j):
        out = muller_solve(lambda z: z ** 3 - 1, seed)
        assert abs(out.x_final ** 3 - 1) < 1e-12


def test_convergence_order_cubic():
    out = muller_solve(lambda z: z ** 3 - 1, 0.9, keep_trace=True)
    assert abs(out.x_final - 1) < 1e-14
    order = empirical_order(out.trace)
    assert 1.6 <= order <= 2.0


def test_cap_exit():
    out = muller_solve(lambda z: cmath.exp(z) - 5, 10.0, cap=1)
    assert out.exit is Muller1DExit.CAP_P and out.iterations == 1


def test_persistent_failure_raises():
    with pytest.raises(EvaluationFailure):
        muller_solve(lambda x: float("nan"), 1.0)


def test_empirical_order_validation():
    with pytest.raises(ValueError):
        empirical_order([1, 2, 3])
