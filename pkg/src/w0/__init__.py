"""Weight-zero (combinatorial) cohomology of singular varieties from dual complexes."""
from .zlinalg import (
    CochainComplex,
    CohomologyGroup,
    ExactnessReport,
    IntMatrix,
    NotACochainComplexError,
    Ring,
    ShapeError,
    SmithForm,
    W0Error,
    complex_cohomology,
    exactness_check,
    hermite_normal_form,
    smith_normal_form,
)
from .sscomplex import (
    InvalidSimplicialSetError,
    SemisimplicialSet,
    SimplicialMap,
    ValidationReport,
    Violation,
    algebraic_cone,
    cochain_complex,
    cohomology,
    cone_long_exact_sequence,
    euler_characteristic,
    validate,
    validate_map,
)
from .geometry import (
    INTEGRAL_CAPTION,
    ConfigError,
    InconsistentContainmentError,
    PairData,
    ResolutionData,
    SncConfiguration,
    Stratum,
    betti_bound_report,
    bound_check,
    dual_complex,
    kh_complete,
    khc_pair,
    kunneth_verify,
    les_verify,
    product_config,
    resolution_nerve,
)

__version__ = "0.1.0"
