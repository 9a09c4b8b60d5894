"""Orbit categories of Dynkin path algebras: catalogs, Hom/Ext tables,
cluster tilting objects, exchange graphs, and endomorphism block profiles.
"""

from .quiver import (
    DisconnectedQuiverError,
    DynkinClass,
    NotDynkinError,
    Quiver,
    QuiverCycleError,
    QuiverError,
    QuiverSyntaxError,
    classify_dynkin,
    euler_form,
    load_quiver,
    parse_quiver,
    positive_root_count,
    validate_quiver,
)
from .arquiver import ARQuiver, IndModule, KnittingError, Rep, knit_ar_quiver
from .derived import DerivedCategory, DObject, ObjectSyntaxError
from .orbit import OrbitCategory, OrbitObject, TwistStableObject, distinct_count
from .tilting import (
    ClusterTilting,
    GenClusterTilting,
    NotExchangeError,
    NotRigidError,
    TiltingGraph,
    build_tilting_graph,
    cluster_tilting_check,
    complements,
    enumerate_cluster_tilting,
    enumerate_stable_tilting_direct,
    exchange_pair_ext,
    is_connected,
    lift,
    near_complements,
)
from .endo import (
    EndoProfile,
    PatternReport,
    block_pattern_report,
    endo_profile,
    exchange_layer_dim,
    single_end_dim,
)

__version__ = "0.1.0"

__all__ = [
    "ARQuiver",
    "ClusterTilting",
    "DerivedCategory",
    "DisconnectedQuiverError",
    "DObject",
    "DynkinClass",
    "EndoProfile",
    "GenClusterTilting",
    "IndModule",
    "KnittingError",
    "NotDynkinError",
    "NotExchangeError",
    "NotRigidError",
    "ObjectSyntaxError",
    "OrbitCategory",
    "OrbitObject",
    "PatternReport",
    "Quiver",
    "QuiverCycleError",
    "QuiverError",
    "QuiverSyntaxError",
    "Rep",
    "TiltingGraph",
    "TwistStableObject",
    "block_pattern_report",
    "build_tilting_graph",
    "classify_dynkin",
    "cluster_tilting_check",
    "complements",
    "distinct_count",
    "endo_profile",
    "enumerate_cluster_tilting",
    "enumerate_stable_tilting_direct",
    "euler_form",
    "exchange_layer_dim",
    "exchange_pair_ext",
    "is_connected",
    "knit_ar_quiver",
    "lift",
    "load_quiver",
    "near_complements",
    "parse_quiver",
    "positive_root_count",
    "single_end_dim",
    "validate_quiver",
]
