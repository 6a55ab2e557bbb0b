"""Two-dimensional Muller root finding for complex nonlinear systems.

Quick start::

    from muller2d import SolveConfig, get_system, solve
    s1 = get_system("S1")
    res = solve(s1, s1.recommended_starts[0], SolveConfig(inner_cap=3))
"""

from .baselines import broyden_solve, newton_solve
from .core import (
    DegenerateGeometry,
    EvaluationFailure,
    ExitReason,
    KnownRoot,
    PointPair,
    RootFindingError,
    RootResult,
    SingularJacobian,
    SolveConfig,
    SystemSpec,
    Variant,
    apply_precondition,
    parse_complex,
    parse_pair,
    residual,
)
from .heunc import HeunParams, heunc, heunc_eval, heunc_prime
from .muller1d import muller_solve, muller_step
from .solver2d import solve
from .systems import (
    QNM_TABLE,
    QnmParams,
    build_rw_system,
    catalog,
    get_system,
    solve_qnm_mode,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateGeometry", "EvaluationFailure", "ExitReason", "HeunParams", "KnownRoot",
    "PointPair", "QNM_TABLE", "QnmParams", "RootFindingError", "RootResult",
    "SingularJacobian", "SolveConfig", "SystemSpec", "Variant", "apply_precondition",
    "broyden_solve", "build_rw_system", "catalog", "get_system", "heunc", "heunc_eval",
    "heunc_prime", "muller_solve", "muller_step", "newton_solve", "parse_complex",
    "parse_pair", "residual", "solve", "solve_qnm_mode",
]
