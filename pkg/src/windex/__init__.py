"""Exact combinatorial circle bundles: surfaces, connections, curvature,
vector-field indices, and the winding identity that ties them together."""

from .bundle import (
    DiscreteConnection,
    FaceReport,
    FlatnessStructure,
    GaugeTransformation,
    attach_flatness,
    basepoint,
    boundary,
    build_connection,
    canonical_flatness,
    curvature_turns,
    face_reports,
    flat_connection,
    gauge_transform,
    holonomy_steps,
    net_holonomy,
    tangent_connection,
    total_flatness_winding,
    trivialize_face,
)
from .complex import (
    OrientedFace,
    OrientedSurface,
    build_surface,
    euler_characteristic,
    induced_edge_order,
    link,
    validate_surface,
)
from .errors import ValidationFailed, ValidationReport, WindexError
from .field import (
    IndexReport,
    VectorField,
    build_field,
    gauge_transform_field,
    index,
    swirl,
    swirl_path,
    totals,
)
from .polygon import Polygon, PolyIso, PolyPath, RotationPath, Turns, mod1

SIGN_CONVENTIONS = "v1"  # see docs/conventions.md

__all__ = [
    "DiscreteConnection",
    "FaceReport",
    "FlatnessStructure",
    "GaugeTransformation",
    "IndexReport",
    "OrientedFace",
    "OrientedSurface",
    "Polygon",
    "PolyIso",
    "PolyPath",
    "RotationPath",
    "SIGN_CONVENTIONS",
    "Turns",
    "ValidationFailed",
    "ValidationReport",
    "VectorField",
    "WindexError",
    "attach_flatness",
    "basepoint",
    "boundary",
    "build_connection",
    "build_field",
    "build_surface",
    "canonical_flatness",
    "curvature_turns",
    "euler_characteristic",
    "face_reports",
    "flat_connection",
    "gauge_transform",
    "gauge_transform_field",
    "holonomy_steps",
    "index",
    "induced_edge_order",
    "link",
    "mod1",
    "net_holonomy",
    "swirl",
    "swirl_path",
    "tangent_connection",
    "total_flatness_winding",
    "totals",
    "trivialize_face",
    "validate_surface",
]
