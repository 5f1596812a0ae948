"""Weierstrass elliptic functions, Neville's primitive functions J1, J2, J3,
and the square-root obstructions carried by the invariants g2 and g3."""

from .errors import (
    CharacterInconsistent,
    DegenerateInvariants,
    DegenerateLattice,
    NevellError,
    TooCloseToPole,
    UnsupportedWeight,
    WitnessVerificationFailed,
    ZeroSearchFailed,
)
from .lattice import (
    GAUSSIAN,
    HEXAGONAL,
    ClassTag,
    Invariants,
    LatticeClass,
    LatticeSpec,
    ReducedBasis,
    classify,
    eisenstein_series,
    half_periods,
    invariants,
    make_lattice,
    reduce_basis,
)
from .neville import period_character, preferred_primitive, primitive_J, sigma_p
from .obstruction import (
    ObstructionReport,
    Target,
    ZeroReport,
    wp_sqrt_obstruction,
    wp_zeros,
    zeta4_sqrt_obstruction,
)
from .weierstrass import (
    EvalKind,
    EvalValue,
    MidpointSet,
    eta_constants,
    midpoint_constants,
    sigma,
    wp,
    wp_double_prime,
    wp_prime,
    wzeta,
    zeta4,
)

__version__ = "0.1.0"
