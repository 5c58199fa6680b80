"""Verification and extremal-search toolkit for sharp discrete functional
inequalities on integer lattices.

Exact rational arithmetic decides every equality claim through integer
certificates; floating point is only used where fractional powers and
logarithms force it.  The grid kernels behind enumeration and annealing have
a compiled (Cython) backend with a pure-Python fallback selected at import;
``latticeineq.kernels.BACKEND`` says which one is active.
"""

from .certify import (
    DEFAULT_TOL,
    ExactCertificate,
    Inequality,
    InequalityReport,
    Relation,
    ShapeClass,
    check_bl,
    check_gn,
    check_isoperimetric,
    check_log_bl,
    check_log_sobolev,
    check_loomis_whitney,
    check_sobolev,
    classify_shape,
    is_scaled_indicator,
    jensen_gap,
    projection_chain,
    set_counts,
)
from .core import (
    Cuboid,
    LatticeSet,
    LineBoundCheck,
    SparseFunction,
    axis_variation,
    boundary_count,
    boundary_edges,
    coord_projection,
    diff_norm,
    entropy,
    indicator,
    max_projection,
    norm,
    partial_difference,
    pointwise_line_bound,
    shadow_projection,
)
from .errors import (
    BudgetExceededError,
    DegenerateInputError,
    DomainError,
    InvalidInputError,
    LatticeError,
    PreconditionError,
)
from .fuzzing import FuzzSummary, fuzz
from .lab import RigidityReport, bl_ratio, enumerate_rigidity, gn_ratio, iso_ratio
from .search import Objective, SearchTrace, anneal_sets, ascend_function

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Cuboid",
    "DEFAULT_TOL",
    "DegenerateInputError",
    "DomainError",
    "ExactCertificate",
    "FuzzSummary",
    "Inequality",
    "InequalityReport",
    "InvalidInputError",
    "LatticeError",
    "LatticeSet",
    "LineBoundCheck",
    "Objective",
    "PreconditionError",
    "Relation",
    "RigidityReport",
    "SearchTrace",
    "ShapeClass",
    "SparseFunction",
    "anneal_sets",
    "ascend_function",
    "axis_variation",
    "bl_ratio",
    "boundary_count",
    "boundary_edges",
    "check_bl",
    "check_gn",
    "check_isoperimetric",
    "check_log_bl",
    "check_log_sobolev",
    "check_loomis_whitney",
    "check_sobolev",
    "classify_shape",
    "coord_projection",
    "diff_norm",
    "entropy",
    "enumerate_rigidity",
    "fuzz",
    "gn_ratio",
    "indicator",
    "is_scaled_indicator",
    "iso_ratio",
    "jensen_gap",
    "max_projection",
    "norm",
    "partial_difference",
    "pointwise_line_bound",
    "projection_chain",
    "set_counts",
    "shadow_projection",
]
