"""regioncut: watershed superpixels, region-graph scores, and joint
labeling + multicut partitioning into class-labeled instances."""

from .boundary import (
    BoundaryGT,
    PixelClass,
    balance_coefficient,
    balanced_loss,
    derive_boundary_gt,
    prune_gt,
)
from .errors import InfeasibleError, ValidationError
from .gridsearch import GridSearchResult, grid_search
from .metrics import MatchReport, evaluate
from .model import (
    FORBIDDEN,
    ClassSet,
    InstanceMap,
    JointSolution,
    PairPrior,
    RegionGraph,
    ScoreGrid,
    SolverParams,
    SuperpixelMap,
    build_region_graph,
    make_pair_prior,
)
from .objective import (
    FeasibilityReport,
    RawAssignment,
    assignment_from_solution,
    check_feasibility,
    crf_objective,
    extract_instances,
    joint_objective,
    multicut_objective,
)
from .pixels import derive_background, sigmoid_edge_probability, watershed
from .scenes import SyntheticScene, synth
from .solvers import (
    SolveResult,
    components_from_labeling,
    crf_solve,
    joint_local_search,
    multicut_greedy,
    oracle_exact,
    solve_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryGT",
    "ClassSet",
    "FORBIDDEN",
    "FeasibilityReport",
    "GridSearchResult",
    "InfeasibleError",
    "InstanceMap",
    "JointSolution",
    "MatchReport",
    "PairPrior",
    "PixelClass",
    "RawAssignment",
    "RegionGraph",
    "ScoreGrid",
    "SolveResult",
    "SolverParams",
    "SuperpixelMap",
    "SyntheticScene",
    "ValidationError",
    "assignment_from_solution",
    "balance_coefficient",
    "balanced_loss",
    "build_region_graph",
    "check_feasibility",
    "components_from_labeling",
    "crf_objective",
    "crf_solve",
    "derive_background",
    "derive_boundary_gt",
    "evaluate",
    "extract_instances",
    "grid_search",
    "joint_local_search",
    "joint_objective",
    "make_pair_prior",
    "multicut_greedy",
    "multicut_objective",
    "oracle_exact",
    "prune_gt",
    "sigmoid_edge_probability",
    "solve_instance",
    "synth",
    "watershed",
]
