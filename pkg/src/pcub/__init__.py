"""Generalized Gauss-Jacobi quadrature and cubature on annular domains.

Subpackages: spherical harmonics and sphere quadrature (`sphere`), the
Laurent-series Hardy space model (`hardy`), Cauchy-type kernels
(`kernels`), generalized Gaussian rules for the annulus radial system
(`quadrature`), componentwise cubature with error bounds (`cubature`),
wire formats (`serialization`), and the invariant suites (`verify`).
"""

from .cubature import (
    ErrorReport,
    GaussJacobiMeasure,
    PseudoPositiveMeasure,
    build_gauss_measure,
    cubature_CN,
    error_bound,
    error_functional,
    estimate_Ck,
    integral_against,
    signed_cubature,
    validate_pseudo_positive,
)
from .errors import (
    CollisionError,
    ConfigError,
    DegenerateMeasureError,
    DomainError,
    PcubError,
    SolverError,
)
from .hardy import (
    Annulus,
    ComponentFunction,
    HardyElement,
    LaurentSeries,
    boundary_trace,
    evaluate,
    h2_inner,
    h2_norm,
    hardy_decompose,
    hl2_norm,
    in_riesz_set,
    m2_mean,
    max_principle_bound,
    riesz_set,
    split_f1_f2,
)
from .kernels import (
    KernelQuery,
    kernel_bound,
    kernel_full,
    kernel_K1,
    kernel_K2,
    kernel_K3,
    kernel_Kk,
    kernel_Kk_series,
    reproduce_component,
    reproduce_full,
)
from .quadrature import (
    QuadratureRule,
    RadialBasis,
    RadialMeasure,
    apply_rule,
    build_basis,
    gauss_rule,
    interpolate,
    interpolation_defect,
    moments,
)
from .sphere import (
    SphereQuadrature,
    SphericalIndex,
    dim_harmonics,
    eval_harmonic,
    laplace_fourier_coefficient,
    sphere_rule,
)

__version__ = "0.1.0"
