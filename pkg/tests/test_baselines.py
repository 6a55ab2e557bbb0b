import pytest

from muller2d.baselines import (
    JacobianMethod,
    broyden_solve,
    forward_difference_jacobian,
    newton_solve,
)
from muller2d.core import ExitReason, PointPair, SolveConfig, SystemSpec
from muller2d.systems import get_system


def test_forward_difference_matches_analytic():
    s = get_system("S5")
    x, y = 0.9 + 0.7j, 1.4 - 0.5j
    fd = forward_difference_jacobian(s, x, y, s.evaluate(x, y))
    exact = s.jacobian(x, y)
    assert fd.method is JacobianMethod.FORWARD_DIFFERENCE
    for got, want in zip((fd.j11, fd.j12, fd.j21, fd.j22), (*exact[0], *exact[1])):
        assert abs(got - want) < 1e-6 * (1 + abs(want))


@pytest.mark.parametrize("name", ["S1", "S2", "S3", "S4", "S6", "S7"])
def test_analytic_jacobians(name):
    # central differences along the real direction against the closed forms
    s = get_system(name)
    start = s.recommended_starts[0]
    h = 1e-6
    (a, b), (c, d) = s.jacobian(start.x, start.y)
    fx = [(u - v) / (2 * h) for u, v in zip(s.evaluate(start.x + h, start.y), s.evaluate(start.x - h, start.y))]
    fy = [(u - v) / (2 * h) for u, v in zip(s.evaluate(start.x, start.y + h), s.evaluate(start.x, start.y - h))]
    for got, want in ((a, fx[0]), (b, fy[0]), (c, fx[1]), (d, fy[1])):
        assert abs(got - want) < 1e-6 * (1 + abs(want))


def test_newton_s2_published_start():
    s = get_system("S2")
    res = newton_solve(s, PointPair(-0.5, 3))
    assert res.converged and s.match_root(res.root).provenance == "S2-root-1"


def test_broyden_s1():
    s = get_system("S1")
    res = broyden_solve(s, s.recommended_starts[1])
    assert res.converged and s.match_root(res.root).provenance == "S1-root-2"


def test_singular_jacobian_exit():
    # parallel lines: the Jacobian is singular everywhere
    s = SystemSpec("parallel", lambda x, y: x + y - 1, lambda x, y: 2 * x + 2 * y + 3,
                   jacobian=lambda x, y: ((1, 1), (2, 2)))
    res = newton_solve(s, PointPair(0, 0))
    assert res.exit_reason is ExitReason.SINGULAR_JACOBIAN
    assert not res.converged


def test_newton_stays_real_on_real_start():
    s = get_system("S5")
    res = newton_solve(s, PointPair(0.5, 0.5), SolveConfig(variant="newton", outer_cap=100))
    assert not res.converged
    assert all(abs(p.x.imag) == 0 and abs(p.y.imag) == 0 for p in res.history)
