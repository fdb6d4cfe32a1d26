"""Twisted conjugacy counts, zeta functions in rational form, Fox-calculus
radius bounds, and mapping-torus torsion special values, each closed formula
paired with an independent brute-force oracle."""

from .errors import (
    BadIndex,
    ClosureTooLarge,
    DoesNotGenerate,
    EigenvalueOnBoundary,
    InfiniteReidemeister,
    NonInvertible,
    NotAHomomorphism,
    NotAPermutation,
    NotConstant,
    NotSquare,
    PoleAtEvaluation,
    SchemaError,
    TwistedZetaError,
    ValidationError,
    ZeroDeterminant,
)
from .fox import (
    FreeGroupEndo,
    GroupRingElement,
    GroupRingMatrix,
    fox_derivative,
    free_reduce,
    jacobian,
    matrix_norm,
    matrix_of_norms,
    nielsen_radius_bounds,
    parse_word,
    ring_norm,
    spectral_radius,
    twisted_power_norm,
    word_to_str,
)
from .groups import (
    ConjugacyPartition,
    FiniteGroup,
    GroupEndomorphism,
    all_endomorphisms,
    endo_from_generator_images,
    eventual_image,
    group_from_permutations,
    identity_endo,
    iterate_endo,
    ordinary_conjugacy_classes,
    phi_conjugacy_classes,
    trivial_group,
)
from .intlinalg import (
    IntMatrix,
    IntPolynomial,
    SmithForm,
    char_poly,
    count_eigen_signs,
    det,
    exterior_power,
    kron,
    mat_pow,
    smith_normal_form,
)
from .reidemeister import (
    ClassFunctionMap,
    ProductEndomorphism,
    class_function_matrix,
    r_abelian,
    r_abelian_smith,
    r_abelian_trace,
    r_finite,
    r_product,
    r_product_oracle,
    r_product_trace,
)
from .zeta import (
    FactoredRationalFunction,
    SignConvention,
    TruncatedSeries,
    congruence_check,
    expand_rational,
    functional_equation_check,
    lefschetz_zeta,
    log_derivative_counts,
    mobius,
    torsion_special_value,
    torsion_via_lefschetz,
    zeta_product,
    zeta_series_oracle,
)

__version__ = "0.1.0"
