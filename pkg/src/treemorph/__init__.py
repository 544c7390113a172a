"""Crossing-free 3D morphs of planar grid drawings of trees."""
from .canonical import CanonicalLayout, canonical_as_drawing, canonical_drawing, relative_canonical, shrunken_canonical
from .core import GridDrawing, Metrics, RootedTree, metrics, segment_distance_sq, vertex_edge_distance_sq
from .decomposition import (
    depth_edge_sets, heavy_decomposition, long_path_decomposition, rooted_pathwidth, tradeoff_partition,
)
from .generate import generate, random_tree, tidy_layout
from .lift_edges import clearance_point, lift_edge_set, morph_to_canonical_edges, stretch_factor_edges
from .lift_paths import lift_path, morph_to_canonical_paths, stretch_factor_paths
from .morph import ALGORITHMS, morph_between, morph_to_canonical
from .primitives import MorphStep
from .state import LiftError, LiftState, MorphTrace
from .tradeoff import morph_to_canonical_tradeoff
from .verifier import brute_force_min_separation, certify_step, check_drawing, check_step, check_trace

__version__ = "0.1.0"
