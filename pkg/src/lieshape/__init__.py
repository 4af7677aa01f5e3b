"""Square root velocity shape analysis for curves on SO(3) and the sphere."""

from lieshape.errors import (
    AngleNearPi,
    AntipodalSegment,
    DegenerateSegment,
    EmptySlopeSet,
    FrameMismatch,
    GridMismatch,
    GridNotIncreasing,
    LieShapeError,
    NoConvergence,
    NotOnManifold,
    NumericFailure,
    OutOfRange,
    ParseError,
    SpaceMismatch,
    ZeroSignalSegment,
)
from lieshape.so3 import alg_inner, alg_norm, exp_so3, hat, log_so3, vee
from lieshape.curves import (
    DiscreteCurve,
    eval_curve,
    eval_group_curve,
    eval_sphere_curve,
    make_curve,
    resample,
    sphere_velocities,
)
from lieshape.srvt import (
    AlgebraSignal,
    l2_distance,
    qr_frame,
    srvt_euclidean,
    srvt_euclidean_inverse,
    srvt_group,
    srvt_group_inverse,
    srvt_reductive,
    srvt_reductive_inverse,
    srvt_sphere,
    srvt_sphere_inverse,
)
from lieshape.registration import DEFAULT_SLOPES, Warp, apply_warp, dp_reparametrize, warp_signal
from lieshape.shape_ops import (
    GeodesicRequest,
    blend,
    close_curve,
    interpolate,
    shape_distance,
)
from lieshape.fileio import load_curve, project_so3_to_s2, save_curve

__version__ = "0.1.0"
