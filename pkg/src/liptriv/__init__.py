"""Exact symbolic tests for bi-Lipschitz triviality of one-parameter
deformations of matrix singularities.

The package decides, for a family ``F + t*theta`` of matrix germs,
whether the deformation is bi-Lipschitz trivial by comparing two
ideals built on a doubled variable set: the difference ideal of the
family and the difference ideal of the direction.  Inclusion of the
second in the first is certified with Groebner cofactors; failure of
the inclusion's valuative closure is certified with an explicit
monomial test curve.  Everything runs over exact rational arithmetic,
and every verdict carries evidence that can be replayed without
trusting the solver that produced it.

Entry points: :func:`analyze` for one family, :func:`normal_space_basis`
for miniversal data, :func:`reproduce_catalog_table` for the bundled
catalog of simple symmetric germs, and the ``liptriv`` command line.
"""

from .analyzer import (
    ASSUMED_PRECONDITIONS,
    AnalyzeOptions,
    AuditError,
    INCONCLUSIVE,
    TableCell,
    TableReport,
    Verdict,
    analyze,
    reproduce_catalog_table,
    verify_inclusion_certificate,
    verify_witness_dense,
)
from .catalog import (
    CATALOG_INDICES,
    CatalogError,
    CoefficientSlot,
    LIPSCHITZ,
    NOT_LIPSCHITZ,
    NormalForm,
    family_parameters,
    normal_form,
    random_direction,
    theta_from_coefficients,
)
from .curves import (
    CurveSearchConfig,
    PullbackSummary,
    SearchReport,
    TestCurve,
    Witness,
    closure_test,
    curve_obstruction,
    enumerate_test_curves,
    format_curve,
    parse_curve,
    pullback,
    pullback_dense,
    pullback_ideal,
)
from .doubling import (
    DoubledIdeal,
    MatrixGerm,
    Unfolding,
    build_unfolding,
    diagonal_collapse,
    diagonal_ideal,
    double_ideal,
    double_of,
    format_matrix_germ,
    merged_parameter_view,
    parse_matrix_germ,
    unfolding_components,
    unfolding_double_ideal,
)
from .groebner import (
    BudgetExceeded,
    GroebnerBasis,
    GroebnerBudget,
    Ideal,
    buchberger,
    divide,
    ideal_contains,
    ideal_member,
    membership_certificate,
    reduce,
    s_polynomial,
)
from .rings import (
    DEFAULT_EXPONENT_CAP,
    ExponentOverflow,
    Monomial,
    ParseError,
    Polynomial,
    RingContext,
    RingError,
    UnivariatePoly,
    format_polynomial,
    parse_polynomial,
    partial_derivative,
    primed,
    substitute,
)
from .tangent import (
    TangentSpaceResult,
    entries_cut_reduced_origin,
    normal_space_basis,
    quotient_image_rank,
    tangent_generators,
)

__version__ = "0.1.0"

__all__ = [
    "ASSUMED_PRECONDITIONS",
    "AnalyzeOptions",
    "AuditError",
    "BudgetExceeded",
    "CATALOG_INDICES",
    "CatalogError",
    "CoefficientSlot",
    "CurveSearchConfig",
    "DEFAULT_EXPONENT_CAP",
    "DoubledIdeal",
    "ExponentOverflow",
    "GroebnerBasis",
    "GroebnerBudget",
    "INCONCLUSIVE",
    "Ideal",
    "LIPSCHITZ",
    "MatrixGerm",
    "Monomial",
    "NOT_LIPSCHITZ",
    "NormalForm",
    "ParseError",
    "Polynomial",
    "PullbackSummary",
    "RingContext",
    "RingError",
    "SearchReport",
    "TableCell",
    "TableReport",
    "TangentSpaceResult",
    "TestCurve",
    "Unfolding",
    "UnivariatePoly",
    "Verdict",
    "Witness",
    "analyze",
    "buchberger",
    "build_unfolding",
    "closure_test",
    "curve_obstruction",
    "diagonal_collapse",
    "diagonal_ideal",
    "divide",
    "double_ideal",
    "double_of",
    "entries_cut_reduced_origin",
    "enumerate_test_curves",
    "family_parameters",
    "format_curve",
    "format_matrix_germ",
    "format_polynomial",
    "ideal_contains",
    "ideal_member",
    "membership_certificate",
    "merged_parameter_view",
    "normal_form",
    "normal_space_basis",
    "parse_curve",
    "parse_matrix_germ",
    "parse_polynomial",
    "partial_derivative",
    "primed",
    "pullback",
    "pullback_dense",
    "pullback_ideal",
    "quotient_image_rank",
    "random_direction",
    "reduce",
    "reproduce_catalog_table",
    "s_polynomial",
    "substitute",
    "tangent_generators",
    "theta_from_coefficients",
    "unfolding_components",
    "unfolding_double_ideal",
    "verify_inclusion_certificate",
    "verify_witness_dense",
    "__version__",
]
