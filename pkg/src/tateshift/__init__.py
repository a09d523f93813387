"""tateshift: exact computer algebra for formal group laws, finite-ring
localization, Tate vanishing certificates, and blue-shift number bounds.

Everything is exact arithmetic over Z, Q, or Z/N; there are no floats and no
tolerances.  All values are immutable after construction and every operation
is a pure function of its inputs, so concurrent use is safe and results are
byte-stable.
"""

from .ring_core import (
    BaseModulus,
    CertificateNotFound,
    ExactPolyRing,
    FiniteAlgebra,
    PolyElement,
    RingElement,
    ZERO_RING,
    annihilator,
    exact_div,
    ideal_contains_one,
    is_unit,
    localize_by_saturation,
    zero_product_certificate,
)
from .series import TruncatedSeries, ZModDomain, QQ, eval_at, reversion, substitute
from .fgl import (
    FormalGroupLaw,
    WeierstrassFactorization,
    build_honda,
    build_multiplicative,
    formal_difference_with_unit,
    weierstrass_divide,
    weierstrass_prepare,
)
from .ring_linalg import (
    NTuple,
    RootCoeffResult,
    VanishingVerdict,
    det_division_free,
    gaussian_nzd_solve,
    interpolate,
    is_ntuple,
    roots_to_coeffs,
    vandermonde_det,
    vanishing_condition,
    verify_localized_tuple,
    verify_tuple,
)
from .classifying import (
    AbelianPGroup,
    ClassifyingRing,
    SubgroupSpec,
    V_count,
    V_count_image,
    build_classifying_ring,
    induced_map,
)
from .tate_blueshift import (
    BlueShiftReport,
    TateRingResult,
    blueshift_bounds,
    nonabelian_lower_bound,
    periodicity_report,
    tate_ring,
    tate_ring_exact,
)

__version__ = "0.1.0"
