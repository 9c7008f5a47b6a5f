"""Directional correlations of one- and two-particle Hadamard walks on the line."""

from .core import (
    L,
    R,
    SYMMETRIC,
    WalkState,
    ProbabilityDistribution,
    HadamardCoords,
    coin_state,
    hadamard_coin,
    step,
    evolve,
    position_distribution,
    half_line_split,
    hadamard_eigenbasis,
    to_hadamard_coords,
    from_hadamard_coords,
)
from .pair import (
    JointDistribution,
    PsTimeSeries,
    bell_state,
    product_state,
    to_hadamard_coords2,
    joint_distribution_distinguishable,
    interference_term,
    p_same_side,
    boson_joint_distribution,
    fermion_joint_distribution,
    ps_timeseries,
)
from .delta import (
    ResourceLimitError,
    delta_coin_default,
    step_delta,
    evolve_delta,
    joint_distribution_of,
    ps_timeseries_delta,
)
from .asymptotics import (
    konno_density,
    asymptotic_half_line,
    ps_separable,
    ps_entangled,
    density_coefficients,
    joint_density,
    plane_eigensystem,
    cdf_by_quadrature,
)
from .experiments import ExperimentSpec, ExperimentResult, preset, run

__version__ = "0.1.0"
