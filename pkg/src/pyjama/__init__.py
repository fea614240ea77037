"""Exact pyjama-stripe covering toolkit.

Gaussian-rational arithmetic, 5- and 13-adic embeddings, solenoid dynamics,
constructive approximation, and certified plane-covering reports.
"""

from .gaussian import (  # noqa: F401
    P5,
    P5BAR,
    P13,
    P13BAR,
    SITES,
    THETA5,
    THETA13,
    GaussianInt,
    GaussianRational,
    PrimeSite,
    abs_at,
    as_gaussian_rational,
    in_A,
    min_period_multiplier,
    theta_power,
    theta_set,
    unit_circle_elements,
    valuation,
)
from .padic import (  # noqa: F401
    CanonicalRoot,
    PadicContext,
    PadicNumber,
    PrecisionError,
    TorsionUnitError,
    closure_index,
    embed,
    gauss_frac_part,
    pexp,
    plog,
    sqrt_neg1,
)
from .polygon import ConvexPolygon  # noqa: F401
from .solenoid import (  # noqa: F401
    ExactPoint,
    PointClassification,
    SolenoidPoint,
    act,
    classify_point,
    distance_upper,
    evaluate,
    orbit_eval_rows,
    orbit_eval_sweep,
    period_exponent,
    periodic_dense_set,
    reduce_to_fundamental,
    stripe_membership,
    torsion_to_periodic,
)
from .covering import (  # noqa: F401
    CoveringConfig,
    CoverReport,
    DiskCoverReport,
    RationalityReport,
    certified_disk_cover,
    irrational_triple,
    obstruction_catalog,
    rationality_check,
    snap_to_lattice,
    theta_prime,
    uncovered_region,
    verify_obstruction,
)
from .approx import (  # noqa: F401
    CosetSpec,
    DensityReport,
    circle_density,
    coset_element,
    semigroup_density,
    strong_approx,
    strong_approx_3way,
)
from .svg import render_svg  # noqa: F401

__version__ = "0.1.0"
