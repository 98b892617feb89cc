from .checks import FactorizationReport, rational_smooth_periodic_check
from .group import NilElement, NilGroup, inv, lambda_membership, mul, reduce
from .leibman import (
    HorizontalCharacter,
    LeibmanCheck,
    TorusPoly2,
    compose,
    inverse_leibman_check,
    leibman_search,
    smoothness_norm,
)
from .orbit import (
    HorizontalExp,
    PolySeq2,
    Progression,
    VerticalNilchar,
    equid_defect,
    evaluate_direct,
    orbit,
    orbit_direct,
)
from .subgroups import ContainmentError, Subgroup, good_pair_check, subgroup_type, theta_lambda

__all__ = [
    "ContainmentError", "FactorizationReport", "HorizontalCharacter", "HorizontalExp", "LeibmanCheck",
    "NilElement", "NilGroup", "PolySeq2", "Progression", "Subgroup", "TorusPoly2", "VerticalNilchar",
    "compose", "equid_defect", "evaluate_direct", "good_pair_check", "inv", "inverse_leibman_check",
    "lambda_membership", "leibman_search", "mul", "orbit", "orbit_direct", "rational_smooth_periodic_check",
    "reduce", "smoothness_norm", "subgroup_type", "theta_lambda",
]
