"""Degree-Rips cluster hierarchies, their layer points, and stability checks for X ⊂ Y."""
from .errors import *  # noqa: F401,F403
from .filtration import components, parameter_grid, vertex_set
from .hierarchy import NodeRef, Segment, SegmentForest, build
from .layers import (
    LayerParameters,
    LayerPoint,
    branch_points,
    layer_parameters,
    layer_points,
    lub_layer,
    max_branch_below,
    max_layer_below,
)
from .metric import Inclusion, MetricSpace, config_distance, from_matrix, from_points, hausdorff_config
from .stability import InclusionPair, check_all, i_star, make_pair, sigma_star, theta_star

__version__ = "0.1.0"
