import cmath
import math

import pytest

from muller2d.core import ExitReason, PointPair, SolveConfig, relative_residual
from muller2d.systems import (
    APPENDIX_CELLS,
    HEUN_CELLS,
    PRESET_NAMES,
    QNM_TABLE,
    S4_CATALOG,
    SPURIOUS_L,
    QnmParams,
    balanced_precondition,
    build_rw_system,
    catalog,
    find_root,
    get_system,
    rw_argument,
    solve_qnm_mode,
)


def test_catalog_names():
    names = [s.name for s in catalog()]
    assert names == list(PRESET_NAMES) == ["S1", "S2", "S3", "S4", "S5", "S6", "S7", "EX1", "RW", "KERR"]
    with pytest.raises(KeyError):
        get_system("S9")
    assert get_system("s2").name == "S2"


def test_published_values_transcribed():
    assert find_root(get_system("S2"), "S2-root-1").pair == PointPair(-1, 3.5)
    s4 = get_system("S4")
    assert len(S4_CATALOG) == 7
    assert all(find_root(s4, label) for label in S4_CATALOG)


@pytest.mark.parametrize("name", [n for n in PRESET_NAMES if n != "KERR"])
def test_known_roots_have_small_residuals(name):
    s = get_system(name)
    for kr in s.known_roots:
        r1, r2 = relative_residual(s, kr.pair)
        assert max(r1, r2) < s.residual_rtol, kr.provenance


def test_kerr_roots_advisory():
    s = get_system("KERR")
    worst = {kr.provenance: max(relative_residual(s, kr.pair)) for kr in s.known_roots}
    assert worst["KERR-root-1"] < 1e-2 and worst["KERR-root-2"] < 1e-2
    # root 3 sits just above the bound with the printed 4-digit coefficients
    assert worst["KERR-root-3"] < 0.1


def test_cells_reference_catalog_roots():
    for cell in APPENDIX_CELLS + HEUN_CELLS:
        assert find_root(get_system(cell.system), cell.root)
        for method, (n, p) in cell.counts.items():
            assert n > 0
            assert (p is None) == (method in ("newton", "broyden"))


def test_rw_parameters_validated():
    with pytest.raises(ValueError):
        QnmParams(theta=0)
    with pytest.raises(ValueError):
        QnmParams(r_abs=-1)
    with pytest.raises(ValueError):
        QnmParams(epsilon_phase=1.0)


def test_rw_argument_phase_condition():
    q = QnmParams()
    w = QNM_TABLE[0]
    z = rw_argument(w, q)
    # arg(1 - z) + arg(omega) = -pi/2 on the steepest-descent ray
    assert abs(abs(1 - z) - 20) < 1e-12
    assert math.isclose(cmath.phase(1 - z) + cmath.phase(w), -math.pi / 2, abs_tol=1e-12)


def test_rw_f1_gate():
    s = build_rw_system()
    v2 = s.evaluate(0.5 + 0.5j, 2.0)[0]
    v25 = s.evaluate(0.5 + 0.5j, 2.5)[0]
    assert abs(v2) < 1e-6 * abs(v25)
    for l in (0.0, 1.0):
        assert abs(s.evaluate(0.5 + 0.5j, l)[0]) < 1e-6 * abs(v25)


@pytest.mark.parametrize("n", [0, 4])
def test_rw_residual_at_table_modes(n):
    s = build_rw_system()
    r1, r2 = relative_residual(s, PointPair(QNM_TABLE[n], 2.0))
    assert max(r1, r2) < 1e-5


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_rw_mirror_modes(n):
    s = build_rw_system()
    w = QNM_TABLE[n]
    mirror = PointPair(-w.conjugate(), 2.0)
    r1, r2 = relative_residual(s, mirror)
    assert max(r1, r2) < 1e-5


def test_balanced_precondition():
    s = build_rw_system()
    start = PointPair(QNM_TABLE[0] + 0.01 + 0.01j, 2.1 + 0.01j)
    (a, b), (c, d) = balanced_precondition(s, start)
    f1, f2 = s.evaluate(start.x, start.y)
    assert a == c == 1 and b == -d
    assert abs(abs(b * f2) - abs(f1)) < 1e-12 * abs(f1)


def test_qnm_mode0():
    res = solve_qnm_mode(QNM_TABLE[0] + 0.01 + 0.01j)
    assert res.exit_reason is ExitReason.STEP_BELOW_TOLERANCE
    assert abs(res.root.x - QNM_TABLE[0]) < 1e-6
    assert abs(res.root.y - 2) < 1e-9
    assert SPURIOUS_L not in res.flags
    assert "|l - round(l)|" in res.message


def test_qnm_spurious_flag():
    # seeded near l = 1, where the order-2 Ferrers factor vanishes identically
    res = solve_qnm_mode(QNM_TABLE[0] + 0.01 + 0.01j, l_seed=1.1 + 0.01j)
    assert res.root.y.real < 1.5
    assert SPURIOUS_L in res.flags
