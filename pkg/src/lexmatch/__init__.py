"""Leximin-optimal stable many-to-one matchings under cardinal valuations."""

from .bench import BenchRecord, bench, bench_one, records_to_csv
from .cli import main, solve_dispatch
from .const2 import fast_const, is_stable_m2
from .errors import (
    BudgetExceededError,
    InfeasibleError,
    InvalidInputError,
    LexmatchError,
    NotAdmissibleError,
    NpHardRegimeError,
)
from .fairness import (
    FairnessReport,
    ef1_check,
    efx_check,
    envy_totals,
    fairness_report,
    welfare,
)
from .fast import cap_fast, fast, fast_admissible
from .fastgen import cap_fast_gen, fast_gen, source_dec
from .generate import GenSpec, generate
from .model import (
    EQUAL,
    GREATER,
    LESS,
    BlockingPair,
    ClassificationFlags,
    Instance,
    LeximinTuple,
    Matching,
    Value,
    as_value,
    check_alpha_approx,
    classify,
    college_value,
    is_stable,
    leximin_compare,
    leximin_tuple,
    student_value,
    value_to_str,
)
from .oracle import OracleBudget, oracle_leximin
from .ranked import (
    BoundaryVector,
    boundary_from_matching,
    compositions,
    demote,
    enumerate_stable,
    matching_from_boundary,
)
from .reductions import (
    ReductionSpec,
    bin_packing_to_smo,
    partition_to_smo,
    subset_sum_to_smo,
    three_partition_to_smo,
)
from .report import SolverReport
from .serialize import (
    dump_instance,
    dump_matching,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_matching,
    matching_from_dict,
    matching_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "BlockingPair",
    "BoundaryVector",
    "BudgetExceededError",
    "ClassificationFlags",
    "EQUAL",
    "FairnessReport",
    "GREATER",
    "GenSpec",
    "InfeasibleError",
    "Instance",
    "InvalidInputError",
    "LESS",
    "LexmatchError",
    "LeximinTuple",
    "Matching",
    "NotAdmissibleError",
    "NpHardRegimeError",
    "OracleBudget",
    "ReductionSpec",
    "SolverReport",
    "Value",
    "as_value",
    "bench",
    "bench_one",
    "bin_packing_to_smo",
    "boundary_from_matching",
    "cap_fast",
    "cap_fast_gen",
    "check_alpha_approx",
    "classify",
    "college_value",
    "compositions",
    "demote",
    "dump_instance",
    "dump_matching",
    "ef1_check",
    "efx_check",
    "enumerate_stable",
    "envy_totals",
    "fairness_report",
    "fast",
    "fast_admissible",
    "fast_const",
    "fast_gen",
    "generate",
    "instance_from_dict",
    "instance_to_dict",
    "is_stable",
    "is_stable_m2",
    "leximin_compare",
    "leximin_tuple",
    "load_instance",
    "load_matching",
    "main",
    "matching_from_boundary",
    "matching_from_dict",
    "matching_to_dict",
    "oracle_leximin",
    "partition_to_smo",
    "records_to_csv",
    "solve_dispatch",
    "source_dec",
    "student_value",
    "subset_sum_to_smo",
    "three_partition_to_smo",
    "value_to_str",
    "welfare",
]
