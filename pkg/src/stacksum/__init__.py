"""Stackelberg subset-sum pricing: exact solvers for the leader's weight
revision game against a greedy follower."""

from ._kernels import BACKEND_NAME as _backend_name
from .constraint import (
    ConstraintSolveResult,
    PhasePlan,
    phase_plan,
    reconstruct_constraint,
    solve_constraint_batched,
    solve_constraint_naive,
)
from .greedy import EfficiencyKey, FillTable, fill_table, simulate
from .hardness import (
    GadgetBundle,
    PartitionAnswer,
    PartitionInstance,
    decide_partition,
    gen_constraint_gadget,
    gen_objective_gadget,
)
from .model import (
    DualWeight,
    Instance,
    ItemRef,
    Model,
    PackingOutcome,
    StacksumError,
    TraceStep,
    WeightAssignment,
    assignment_to_json,
    dual_compare,
    instance_to_json,
    parse_assignment,
    parse_instance,
    validate,
)
from .objective import (
    ObjectiveSolveResult,
    ReachTable,
    build_reach_table,
    reconstruct_objective,
    solve_objective,
)
from .oracle import OracleResult, oracle_constraint, oracle_objective
from .variants import (
    ClosedFormResult,
    fractional_greedy_value,
    solve_constraint_simple,
    solve_lp,
)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Which kernel backend was selected at import: 'compiled' or 'pure'."""
    return _backend_name


__all__ = [
    "ClosedFormResult",
    "ConstraintSolveResult",
    "DualWeight",
    "EfficiencyKey",
    "FillTable",
    "GadgetBundle",
    "Instance",
    "ItemRef",
    "Model",
    "ObjectiveSolveResult",
    "OracleResult",
    "PackingOutcome",
    "PartitionAnswer",
    "PartitionInstance",
    "PhasePlan",
    "ReachTable",
    "StacksumError",
    "TraceStep",
    "WeightAssignment",
    "assignment_to_json",
    "build_reach_table",
    "decide_partition",
    "dual_compare",
    "fill_table",
    "fractional_greedy_value",
    "gen_constraint_gadget",
    "gen_objective_gadget",
    "instance_to_json",
    "kernel_backend",
    "oracle_constraint",
    "oracle_objective",
    "parse_assignment",
    "parse_instance",
    "phase_plan",
    "reconstruct_constraint",
    "reconstruct_objective",
    "simulate",
    "solve_constraint_batched",
    "solve_constraint_naive",
    "solve_constraint_simple",
    "solve_lp",
    "solve_objective",
    "validate",
]
