"""Exact-arithmetic toolkit for truncated Sullivan minimal models.

Everything runs over the rationals with no floating point anywhere:
positive-weight detection, one-parameter automorphism families and their
induced cohomology actions, bigraded models built from cohomology tables,
and growth/flexibility numerics, plus the ``rht`` command-line front end.
"""

from .algebra import Element, FreeGCA, Generator
from .cohomology import (
    ActionReport,
    CochainComplex,
    CohomologyReport,
    DiagonalizationCertificate,
    FlexibilityReport,
    WeightDecompositionReport,
    characteristic_polynomial,
    cohomology,
    complex_for,
    diagonalization_certificate,
    flexibility_report,
    homology_action,
    induced_action,
    weight_decomposition,
)
from .errors import (
    AmbientMismatchError,
    DegreeRangeError,
    FamilyError,
    HomogeneityError,
    ScalarKindError,
    SchemaError,
    SingularMapError,
    ToolkitError,
)
from .families import (
    EvaluatedFamily,
    ModelAutomorphism,
    ModelMap,
    OneParameterFamily,
    compose_families,
    conjugate,
    diagonal_family,
    evaluate,
    load_automorphism,
    load_family,
    parse_automorphism,
    parse_family,
    serialize_automorphism,
    serialize_family,
    transport_presentation,
    verify_family,
)
from .formal import FormalModelResult, build_formal_model, verify_formal_result
from .growth import (
    CONDITIONAL_NOTE,
    GrowthReport,
    dil_exponent,
    growth_exponent,
    growth_report,
)
from .model import (
    BasisClass,
    GradedAlgebraTable,
    SullivanPresentation,
    Violation,
    load_presentation,
    load_table,
    parse_presentation,
    parse_table,
    serialize_presentation,
    serialize_table,
)
from .scalars import Laurent
from .weights import (
    WeightAssignment,
    WeightReport,
    check_weights,
    extract_constraints,
    find_weights,
)

__version__ = "0.1.0"

__all__ = [
    "ActionReport",
    "AmbientMismatchError",
    "BasisClass",
    "CONDITIONAL_NOTE",
    "CochainComplex",
    "CohomologyReport",
    "DegreeRangeError",
    "DiagonalizationCertificate",
    "Element",
    "EvaluatedFamily",
    "FamilyError",
    "FlexibilityReport",
    "FormalModelResult",
    "FreeGCA",
    "Generator",
    "GradedAlgebraTable",
    "GrowthReport",
    "HomogeneityError",
    "Laurent",
    "ModelAutomorphism",
    "ModelMap",
    "OneParameterFamily",
    "ScalarKindError",
    "SchemaError",
    "SingularMapError",
    "SullivanPresentation",
    "ToolkitError",
    "Violation",
    "WeightAssignment",
    "WeightDecompositionReport",
    "WeightReport",
    "build_formal_model",
    "characteristic_polynomial",
    "check_weights",
    "cohomology",
    "complex_for",
    "compose_families",
    "conjugate",
    "diagonal_family",
    "diagonalization_certificate",
    "dil_exponent",
    "evaluate",
    "extract_constraints",
    "find_weights",
    "flexibility_report",
    "growth_exponent",
    "growth_report",
    "homology_action",
    "induced_action",
    "load_automorphism",
    "load_family",
    "load_presentation",
    "load_table",
    "parse_automorphism",
    "parse_family",
    "parse_presentation",
    "parse_table",
    "serialize_automorphism",
    "serialize_family",
    "serialize_presentation",
    "serialize_table",
    "transport_presentation",
    "verify_family",
    "verify_formal_result",
    "weight_decomposition",
]
