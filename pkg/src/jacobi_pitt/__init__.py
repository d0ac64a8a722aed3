"""Jacobi harmonic analysis and shifted Pitt inequalities."""

from .exceptions import (
    ConvergenceError,
    JacobiPittError,
    NumericalError,
    PoleError,
    QuadratureError,
    ValidationError,
)
from .quadrature import QuadratureSpec
from .regions import (
    ExponentPair,
    PittQuery,
    RankOneGeometry,
    Verdict,
    classify,
    region_boundary,
)
from .special_functions import (
    EvaluationConfig,
    JacobiParams,
    harish_chandra_c,
    jacobi_phi,
    phi0,
    plancherel_density,
)
from .transforms import (
    AnalyticFunction,
    SampledFunction,
    bump,
    jacobi_direct,
    jacobi_inverse,
    jacobi_modified_direct,
    jacobi_modified_inverse,
    plancherel_defect,
)

__version__ = "0.1.0"
