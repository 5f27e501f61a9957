"""A degree-2 quasiregular map of the plane whose bounded orbits form a
Cantor set, with tools for its dynamics, Hausdorff gauge sums and
backward-orbit measures."""

from .coding import LocalPoint, ScaleTable, cantor_point, center_of
from .geometry import Gauge, PowerGauge, chordal_distance
from .qrmap import (
    BoundaryPointError,
    MapParams,
    ParameterError,
    PreimageError,
    beltrami,
    classify,
    evaluate,
    params_new,
    preimages,
)

__version__ = "0.1.0"
