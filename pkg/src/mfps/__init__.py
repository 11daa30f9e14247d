"""Exact multivariate formal power series: arithmetic, calculus, composition
and compositional inversion."""

from ._kernels import BACKEND
from .calculus import (
    JacobianMatrix,
    det,
    higher_derivative,
    jacobian,
    jacobian_at_origin,
    partial_derivative,
)
from .composition import (
    ConvergenceReport,
    SeriesVector,
    SummationBudget,
    UnitComposition,
    admits_addition_check,
    chain_rule_rhs,
    check_composability,
    compose,
    compose_unit,
    compose_vector,
    d_term,
    enumerate_partition_solutions,
    identity,
    monomial_power,
    unit_coefficient_by_blocks,
)
from .errors import (
    ArgumentError,
    CompositionDivergedError,
    CompositionError,
    CompositionUndecidedError,
    DimensionError,
    ExpressionSyntaxError,
    InversionError,
    PreconditionError,
    SeriesError,
    TrivialCompositionWarning,
    VariableRangeError,
)
from .expr import eval_expression, expression_oracle, parse_expression
from .inversion import compose_inverse, invert, invert_affine, is_invertible
from .io import format_series, read_series, write_series
from .multiindex import enumerate_degree, lex_compare, multiindex_count
from .oracles import CoefficientOracle, expprod, geom1, geom2, poly
from .series import (
    TruncatedSeries,
    add,
    block,
    constant,
    is_unit,
    make_series,
    mul,
    one,
    pow,
    pow_block_coefficient,
    retruncate,
    variable,
    zero,
)

__version__ = "0.1.0"
