"""Exact exterior-algebra combinatorics over the rationals.

Monomial bases and initial hypergraphs, generic projections and lifts,
hypergraph shadows and extremal oracles, and a checkable certificate chain
for weighted skew set-pair and subspace-pair inequalities.
"""

from .errors import (
    CapacityError,
    ExtAlgError,
    FrameMismatch,
    GenericityFailure,
    NotABasis,
    ParseError,
    PreconditionError,
    ShapeError,
    Singular,
    ZeroVector,
)
from .exterior import (
    BasisFrame,
    MultiVector,
    Subspace,
    algebraic_shift,
    algebraic_shift_with_certificate,
    initial_hypergraph,
    initial_set,
    is_mutually_annihilating,
    is_self_annihilating,
    monomial_space,
    span,
    to_frame,
    wedge,
)
from .hypergraphs import (
    Hypergraph,
    cross_product_oracle,
    density_projection_bound,
    ekr_oracle,
    is_cross_intersecting,
    is_intersecting,
    local_lym_check,
    restriction,
    upper_shadow,
)
from .projection import (
    GenericityRequest,
    check_lift_bound,
    check_projection_bound,
    ext_lym_check,
    project_multivector,
    project_subspace,
    project_vector,
    sample_generic_basis,
    wedge_with_power,
)
from .rational_linalg import RatMatrix, compound, det, invert, rref
from .subsets import revcolex_cmp, wedge_monomials
from .two_families import (
    SetPairSystem,
    SubspacePairSystem,
    blade,
    brute_force_extremal,
    certify_two_families,
    conjecture_search,
    generate_example,
    sets_to_subspaces,
    verify_conditions,
    weighted_sum,
)

__version__ = "0.1.0"
