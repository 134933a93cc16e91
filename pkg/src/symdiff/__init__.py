"""symdiff: exact ordinary, symbolic, differential, delta- and mixed
differential powers of ideals in polynomial rings over Q, F_p, F_p(t),
Z_(p) and Z[t]_(p)."""

from .coeff import (
    DomainKind,
    DomainSpec,
    Scalar,
    p_local_integers,
    p_local_poly_fractions,
    prime_field,
    rational_functions,
    rationals,
)
from .diffops import (
    DiffOperator,
    Linearity,
    MixedOperator,
    apply,
    enumerate_mixed_operators,
    enumerate_operators,
    format_operator,
    operator_lowers_powers_check,
    parse_operator,
)
from .groebner import (
    Ideal,
    ReductionTrace,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    ideal_power,
    intersect,
    normal_form,
    quotient,
)
from .poly import (
    GREVLEX,
    LEX,
    Block,
    GrevLex,
    Lex,
    LiftSpec,
    MultiIndex,
    Polynomial,
    PolyRing,
    frobenius_apply,
    hasse_derivative,
    poly_delta,
    taylor_expansion,
)
from .powers import (
    CompareReport,
    DeltaPower,
    Differential,
    Mixed,
    Ordinary,
    Symbolic,
    Verdict,
    compare_report,
    diff_power_generators,
    find_separating_operator,
    member,
    mixed_intersection_form,
)
from .exprs import parse_polynomial, parse_scalar
from .jobs import JobSpec, parse_job, run_job

__version__ = "0.1.0"
