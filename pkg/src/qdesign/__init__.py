"""Exact maximal design orders of symmetric local random circuits."""

from .combinatorics import (
    a_sequence,
    b_bound,
    binomial,
    c_bound,
    permutation_trace_vector,
    su2_witness,
    u1_witness,
)
from .errors import FormatError, InvariantError, PreconditionError, ResourceLimitError
from .oracles import (
    FIXTURES,
    CollisionReport,
    CommutantReport,
    collision_exists,
    collision_pair_from_vector,
    commutant_check,
    symmetric_algebra_generators,
)
from .solver import (
    DesignOrder,
    KernelBasis,
    SolutionCertificate,
    integer_kernel,
    max_design_order,
    minimize_cost,
    positive_weight,
    seed_upper_bound,
    theorem_order,
)
from .symmetry import (
    ConstraintSystem,
    IrrepTable,
    SymmetrySpec,
    constraint_system,
    irrep_table,
    parse_custom,
)

__version__ = "0.1.0"

__all__ = [
    "FIXTURES",
    "CollisionReport",
    "CommutantReport",
    "ConstraintSystem",
    "DesignOrder",
    "FormatError",
    "InvariantError",
    "IrrepTable",
    "KernelBasis",
    "PreconditionError",
    "ResourceLimitError",
    "SolutionCertificate",
    "SymmetrySpec",
    "a_sequence",
    "b_bound",
    "binomial",
    "c_bound",
    "collision_exists",
    "collision_pair_from_vector",
    "commutant_check",
    "constraint_system",
    "integer_kernel",
    "irrep_table",
    "max_design_order",
    "minimize_cost",
    "parse_custom",
    "permutation_trace_vector",
    "positive_weight",
    "seed_upper_bound",
    "su2_witness",
    "symmetric_algebra_generators",
    "theorem_order",
    "u1_witness",
]
