"""Exact and asymptotic average weight spectra of regular LDPC ensembles over GF(q)."""

from .bounds import (
    MarginReport,
    MinDistanceBoundReport,
    kappa,
    min_distance_bound,
    smallx_inequality_margin,
    taylor_check,
    zero_column_filtered_bound,
)
from .errors import CapacityError, DomainError, ParameterError
from .gf import FieldSpec, build_field, field_arith
from .growth import (
    DeltaEval,
    GrowthPoint,
    Landmarks,
    delta,
    delta_curve,
    delta_two_arg,
    divergence,
    domega,
    domega_alt,
    entropy_q,
    gv_threshold,
    landmarks,
    omega,
    omega_curve,
    rho,
    solve_zhat1,
    x1_right_endpoint,
    xi,
    xi_coefficients,
    z_left_endpoint,
    zeta,
)
from .sim import (
    CodeSample,
    SimReport,
    WeightEnumeration,
    enumerate_weights,
    exhaustive_ensemble,
    monte_carlo,
    sample_code,
)
from .spectrum import (
    CheckCoeffTable,
    EnsembleParams,
    ScalingReport,
    SpectrumTable,
    avg_weight_at,
    avg_weight_d2,
    avg_weight_distribution,
    beta,
    check_coeffs,
    log_avg_upper_bound,
    log_fraction,
    single_check_coeffs,
    small_weight_scaling,
)

__version__ = "0.1.0"
