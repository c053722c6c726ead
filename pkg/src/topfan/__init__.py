"""Exact arithmetic for topological fans over complex-by-integer vector data.

The package validates fan axioms with rational arithmetic, computes dual
bases and equivariant chart transitions, decides whether a fan presents a
toric manifold, and analyzes invariant (stably) complex structures on the
dense orbit.
"""

from .czalgebra import (
    CZMat,
    CZVector,
    Rational,
    cz_mul,
    cz_power,
    dual_basis,
    is_scalar_integer,
    pairing,
    real_matrix,
)
from .errors import (
    DomainError,
    FanParseError,
    FanStructureError,
    GenerationError,
    InvalidFanError,
    NotUnimodular,
    PreconditionError,
    SingularRealPart,
    TopfanError,
    UnknownSimplexError,
)
from .fan import (
    SimplicialComplex,
    TopologicalFan,
    ValidationReport,
    cone_generators,
    cones_nonoverlapping,
    is_complete,
    is_nonsingular,
    is_ordinary,
    random_fan,
    validate,
)
from .charts import (
    Chart,
    OrbitPoint,
    TransitionMap,
    Verdict,
    character,
    chart,
    chart_map,
    classify,
    cocharacter,
    evaluate_transition,
    is_holomorphic,
    orbit_coordinates,
    orbit_jacobian,
    transition,
)
from .acs import (
    BlockAnalysis,
    ExtensionVerdict,
    OrbitACS,
    acs_field,
    divergence_probe,
    equivalence_cross_check,
    invariant_acs,
    smooth_extension_analysis,
    std_complex_structure,
)
from .fanio import emit_fan, parse_fan

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
