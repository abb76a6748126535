"""Distances, unitary-orbit bounds and perfect discrimination for finite-dimensional quantum states."""

from .discrimination import (
    DiscriminationReport,
    Povm,
    build_discrimination_povm,
    can_discriminate,
    diagonal_reduction_check,
    discriminate,
    max_distinguishable_subset,
    sic_simplex_side,
    simplex_side_check,
)
from .errors import *  # noqa: F401,F403
from .metrics import (
    MetricKind,
    bhattacharyya,
    d_bures,
    d_hs,
    d_trace,
    fidelity,
    fuchs_vdg_check,
    orthogonal_supports,
    root_fidelity,
)
from .numerics import (
    abs_of,
    all_permutations,
    haar_unitary,
    herm_eig,
    matrix_sqrt_psd,
    random_channel_apply,
    random_density,
    singular_values,
    trace_norm,
    unistochastic_from,
)
from .orbits import (
    OrbitBoundsReport,
    bures_orbit_bounds,
    eigen_difference_bounds,
    fidelity_orbit_bounds,
    horn_johnson_partial_sums,
    orbit_extremes,
    trace_orbit_bounds,
    trace_product_bounds,
    trace_product_bounds_hermitian,
    trace_unitary_max_check,
    von_neumann_bound,
    weyl_chamber_index,
)
from .states import (
    DensityMatrix,
    Projector,
    Spectrum,
    diag_state,
    numerical_rank,
    pure_state,
    sort_spectrum,
    support_projector,
    validate_state,
)

__version__ = "0.1.0"
