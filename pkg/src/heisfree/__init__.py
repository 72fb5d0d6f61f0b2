"""Exact computations for groups generated by two Heisenberg translations."""

__version__ = "0.1.0"

from .scalars import (  # noqa: E402
    DEFAULT_TOL,
    ExactComplex,
    ExactScalar,
    ImaginaryQuat,
    ParseError,
    Quaternion,
    exact_inverse,
    exact_mul,
    quat_conj_norm,
    quat_mul,
)
from .hermitian import (  # noqa: E402
    FORM_H,
    INFINITY,
    ORIGIN,
    Matrix3,
    SiegelRegion,
    Vector3,
    VectorType,
    classify_vector,
    herm_inner,
    is_unitary,
    siegel_membership,
    standard_lift,
)
from .heisenberg import (  # noqa: E402
    HeisPoint,
    heis_action,
    heis_mul,
    heis_translation_matrix,
    is_vertical,
)
from .cartan import (  # noqa: E402
    BoundaryTriple,
    cartan_invariant,
    decompose_generators,
    inversion_matrix,
    polar_vector,
)
from .freeness import (  # noqa: E402
    FreenessVerdict,
    GeneratorPair,
    ReducedWord,
    VerdictKind,
    check_free_lu,
    check_free_main,
    check_free_quat,
    check_free_vertical_quat,
    embed_2x2,
    flawed_prior_condition,
    generator_pair,
    identity_word_search,
    quat_conjugator,
    threshold_equivalence,
    trace_ab,
    word_evaluate,
)
