"""Decision support for resilient supplier selection and order allocation.

Heterogeneous evidence (time series, extracted numeric ranges, linguistic
judgments) is fused into triangular fuzzy numbers, scored with weighted
fuzzy TOPSIS, blended into a cost-versus-resilience index, and fed into a
goal program that allocates order quantities across suppliers.
"""
from .tfn import TFN, tfn_add, tfn_membership, tfn_mul, tfn_scale, tfn_sub
from .scales import PERFORMANCE, WEIGHT, LinguisticScale
from .frames import Frame, fuzzify_frame
from .temporal import estimate_possibility, induce_tfn, point_cloud
from .granular import extract, integrate_tfn, range_membership
from .linguistic import aggregate_dms, build_qualitative_tfn, term_to_tfn
from .topsis import Attribute, DecisionMatrix, RankingResult, rank, scri, scri_sweep
from .lp import LinearProgram, lp_solve
from .mcgp import AllocationPlan, McgpModel, penalty_oracle, solve_allocation
from .dataset import Dataset, PipelineConfig, load_dataset, save_dataset
from .pipeline import Session, load_session, run_pipeline, save_session

__version__ = "0.1.0"

__all__ = [
    "TFN", "tfn_add", "tfn_sub", "tfn_mul", "tfn_scale", "tfn_membership",
    "LinguisticScale", "PERFORMANCE", "WEIGHT",
    "Frame", "fuzzify_frame",
    "point_cloud", "estimate_possibility", "induce_tfn",
    "range_membership", "integrate_tfn", "extract",
    "term_to_tfn", "aggregate_dms", "build_qualitative_tfn",
    "Attribute", "DecisionMatrix", "RankingResult", "rank", "scri", "scri_sweep",
    "LinearProgram", "lp_solve",
    "McgpModel", "AllocationPlan", "penalty_oracle", "solve_allocation",
    "Dataset", "PipelineConfig", "load_dataset", "save_dataset",
    "Session", "run_pipeline", "save_session", "load_session",
    "__version__",
]
