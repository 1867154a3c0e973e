"""Determinants and linear systems by Sylvester's identity (K-Chio condensation)."""
from .complexity import (
    BenchReport, CostModelParams, Table1Costs, kchio_add_cost, kchio_mult_cost, measured_vs_model,
    optimal_k, table1_costs,
)
from .condense import (
    RowCofactors, condense, condense_chio, determinant, hat_entry, normalize_rows, row_cofactors,
    select_pivot_block,
)
from .errors import (
    BackendMismatchError, IndexSelectionError, KChioError, ParseError, RankDeficientError,
    SingularPivotError, SingularSystemError,
)
from .io import parse_matrix_file, parse_vector_file
from .matrix import IndexSelection, Matrix, extract_submatrix
from .scalar import (
    Backend, OpCounter, Scalar, counter_merge, scalar_add, scalar_div, scalar_mul, scalar_sub,
)
from .solver import (
    CondensedSystem, Solution, condense_rhs, condense_system, solve_all, solve_for, terminal_solve,
)

__version__ = "0.1.0"
