"""latclust: clustering from pairwise distances via lateral-inhibition
activity transfer, with K(T) plateau analysis for estimating the number of
classes present in the data.
"""

from ._backend import BACKEND
from .dynamics import (
    ActivityState,
    ClusteringResult,
    DynamicsConfig,
    assign_to_centers,
    cluster_at_threshold,
    init_activities,
    run_dynamics,
    step,
)
from .errors import (
    GenerationError,
    LatclustError,
    NonConvergenceError,
    ParameterError,
    ParseError,
    ValidationError,
)
from .io import (
    BlobSpec,
    gen_blobs,
    load_iris,
    read_distance_csv,
    read_points_csv,
    render_curve_svg,
    write_curve_tsv,
    write_plateau_json,
    write_result_json,
)
from .model import (
    DistanceMatrix,
    InteractionWeights,
    PointSet,
    build_weights,
    distances_from_points,
)
from .sweep import (
    Plateau,
    SweepCurve,
    SweepGrid,
    SweepSample,
    detect_plateaus,
    make_grid,
)

__version__ = "0.1.0"

__all__ = [
    "ActivityState",
    "BACKEND",
    "BlobSpec",
    "ClusteringResult",
    "DistanceMatrix",
    "DynamicsConfig",
    "GenerationError",
    "InteractionWeights",
    "LatclustError",
    "NonConvergenceError",
    "ParameterError",
    "ParseError",
    "Plateau",
    "PointSet",
    "SweepCurve",
    "SweepGrid",
    "SweepSample",
    "ValidationError",
    "assign_to_centers",
    "build_weights",
    "cluster_at_threshold",
    "detect_plateaus",
    "distances_from_points",
    "gen_blobs",
    "init_activities",
    "load_iris",
    "make_grid",
    "read_distance_csv",
    "read_points_csv",
    "render_curve_svg",
    "run_dynamics",
    "step",
    "write_curve_tsv",
    "write_plateau_json",
    "write_result_json",
]
