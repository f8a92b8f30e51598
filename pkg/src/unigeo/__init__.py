"""Optimal paths, rectifiable distances and angular metrics on U(n) and the Grassmannian."""

from .exceptions import (
    BoundaryNonUnique,
    ConvergenceFailure,
    DimensionMismatch,
    GapTooLarge,
    InvalidGauge,
    NondegeneracyRequired,
    NonUniqueWarning,
    NotCodiagonal,
    NotHermitian,
    NotOrthonormal,
    NotProjection,
    NotUnitary,
    OptimizerStalled,
    OutOfDomain,
    RankMismatch,
    RankTooLarge,
    UnigeoError,
)
from .grassmann import (
    angular_metric,
    as_projection,
    direct_rotation,
    grassmann_distance,
    grassmann_geodesic,
    principal_angles,
    projection_from_basis,
    psi_distance_equivalence,
    to_symmetry,
)
from .lagrangian import (
    GaugeFunction,
    Lagrangian,
    check_nondegenerate_witness,
    custom_gauge,
    custom_lagrangian,
    energy,
    gauge_eval,
    induced_psi,
    ky_fan,
    lagrangian_eval,
    norm_lagrangian,
    parse_gauge,
    parse_lagrangian,
    schatten,
)
from .matcore import (
    as_hermitian,
    as_unitary,
    exp_i,
    hermitian_eig,
    modulus,
    principal_log,
    singular_values,
)
from .unitary_paths import (
    GeodesicSegment,
    PolygonalPath,
    SampledCurve,
    action,
    check_alignment,
    distance_phi,
    eval_polygonal,
    geodesic_between,
    length_phi,
    polygonal_from_samples,
)

__version__ = "0.1.0"
