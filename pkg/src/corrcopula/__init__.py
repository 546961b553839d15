"""Correlation-based and-operation as a bivariate copula family."""

from corrcopula.core import (
    CorrelationCopula,
    DomainError,
    InvariantError,
    Rect,
    Region,
    RegionError,
    UnitPoint,
    clamp_to_frechet,
    classify_region,
    copula_eval,
    frechet_lower,
    frechet_upper,
    mixed_density,
    partial_a,
    raw_and,
)
from corrcopula.envelope import ProbInterval, RhoInterval, and_envelope, frechet_envelope
from corrcopula.geometry import (
    InteriorBand,
    interior_band,
    lower_boundary_neg_rho,
    upper_boundary_neg_rho,
    upper_boundary_pos_rho,
)
from corrcopula.sampler import (
    JointTable,
    SampleConfig,
    conditional_cdf,
    invert_conditional,
    joint_table,
    sample_pairs,
)
from corrcopula.verify import (
    VolumeReport,
    additivity_check,
    c_volume,
    subdivide_and_check,
    verify_grid,
)

__version__ = "0.1.0"
