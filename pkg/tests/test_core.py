import math

import pytest
from hypothesis import given, strategies as st

from muller2d.core import (
    EvaluationFailure,
    KnownRoot,
    PointPair,
    SolveConfig,
    SystemSpec,
    apply_precondition,
    format_complex,
    parse_complex,
    parse_pair,
    residual,
    safe_eval,
)


@pytest.mark.parametrize("text, value", [
    ("0.17+0.97i", 0.17 + 0.97j),
    ("-5.4", -5.4),
    ("3i", 3j),
    ("-i", -1j),
    ("1e-3-2e-4i", 1e-3 - 2e-4j),
    ("4.4-5.0i", 4.4 - 5j),
    ("2+1j", 2 + 1j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("bad", ["", "abc", "1+2", "1..2i", "0x"])
def test_parse_complex_rejects(bad):
    with pytest.raises(ValueError):
        parse_complex(bad)


def test_parse_pair():
    assert parse_pair("4.4-5.0i,8.5-16i") == PointPair(4.4 - 5j, 8.5 - 16j)
    with pytest.raises(ValueError):
        parse_pair("1,2,3")


finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@given(finite, finite)
def test_format_parse_roundtrip(re, im):
    z = complex(re, im)
    back = parse_complex(format_complex(z, 12))
    assert abs(back - z) <= 1e-11 * max(abs(z), 1e-300)


def test_solve_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(digits=3)
    with pytest.raises(ValueError):
        SolveConfig(inner_cap=0)
    with pytest.raises(ValueError):
        SolveConfig(deviation=0)
    with pytest.raises(ValueError):
        SolveConfig(precondition=((1, 1), (2, 2)))
    cfg = SolveConfig(variant="m2", digits=10)
    assert cfg.step_tol == 1e-10
    assert cfg.tolerance_for(9.0) == pytest.approx(1e-9)
    assert cfg.with_(residual_tol=1e-3).tolerance_for(9.0) == 1e-3


def _toy():
    return SystemSpec("toy", lambda x, y: x + y - 3, lambda x, y: x - y + 1,
                      (KnownRoot(PointPair(1, 2), "toy-root"),),
                      jacobian=lambda x, y: ((1, 1), (1, -1)))


def test_precondition_and_swap():
    s = _toy()
    p = apply_precondition(s, ((1, 1), (1, -1)))
    assert p.evaluate(0, 0) == (-2, -4)
    (a, b), (c, d) = p.jacobian(0, 0)
    assert (a, b, c, d) == (2, 0, 0, 2)
    w = s.swapped()
    assert w.evaluate(0, 0) == (1, -3)
    assert w.jacobian(0, 0)[0] == (1, -1)


def test_match_root_and_residual():
    s = _toy()
    assert s.match_root(PointPair(1 + 1e-12, 2)).provenance == "toy-root"
    assert s.match_root(PointPair(1.1, 2)) is None
    assert residual(s, PointPair(1, 2)) == (0.0, 0.0)


def test_safe_eval_wraps_failures():
    with pytest.raises(EvaluationFailure):
        safe_eval(lambda x, y: 1 / x, 0, 0)
    with pytest.raises(EvaluationFailure):
        safe_eval(lambda x, y: complex(math.inf, 0), 0, 0)
    with pytest.raises(ValueError):
        KnownRoot(PointPair(0, 0), "bad", 0.0)
