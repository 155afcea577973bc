"""Exact closed-form powers of triangular matrices."""

from .arith import (
    Polynomial,
    Rational,
    RationalFunction,
    poly_gcd,
    rat_canonicalize,
    rat_pow,
    ratfunc_eval_at_zero,
    ratfunc_simplify,
)
from .bench import BenchReport, bench
from .closed_form import (
    ClosedFormTable,
    closed_form_eval,
    extract_coefficients,
    gen_binom,
    matrix_power,
    power_entry,
)
from .errors import (
    DistinctnessError,
    DomainError,
    InputError,
    ParseError,
    PoleError,
    ShapeError,
    SingularityError,
    TriPowError,
)
from .factors import (
    PowerFactorTable,
    power_factor_chains,
    power_factors_recursive,
    power_from_factors,
)
from .io import parse_matrix
from .tri import (
    DiagonalGrouping,
    PerturbationPlan,
    TriMatrix,
    build_perturbation_plan,
    group_diagonal,
    make_tri_matrix,
    perturb,
)
from .verify import (
    VerificationReport,
    confluent_solve_oracle,
    direct_power,
    equivalence_suite,
    tri_inverse,
)

__version__ = "0.1.0"
