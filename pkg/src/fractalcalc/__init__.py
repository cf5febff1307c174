"""Local and non-local calculus on the middle-third Cantor set.

Functions on the set are represented by their profile ``g`` in the
staircase coordinate ``u = S(x)``; every operator acts on ``g``.
"""

from .errors import (
    ConvergenceError,
    DomainError,
    EvaluationError,
    FractalCalcError,
    PoleError,
    ShapeError,
    SolverError,
)
from .laplace import Lemma2, Lemma3, Lemma4, forward_transform, invert
from .local_fcalc import (
    Profile,
    constant,
    exponential,
    falpha_derivative,
    falpha_integral,
    identity,
    power,
)
from .nonlocal_fcalc import (
    OrderPair,
    caputo_derivative,
    grunwald_derivative,
    rl_derivative,
    rl_integral,
)
from .ode import LinearFDEProblem, compare_runs, gl_stepper, solve_local, solve_nonlocal
from .physics import BlairParams, TautochroneParams, blair_stress, blair_sweep, tautochrone_solve
from .series import GridSeries
from .special import gamma_f, mittag_leffler
from .staircase import IDENTITY, LOG3_2, TRIADIC, CantorSpec, in_cantor, staircase_eval, staircase_inverse

__version__ = "0.1.0"
