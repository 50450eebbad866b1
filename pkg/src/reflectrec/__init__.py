"""reflectrec: linear recurrences whose equations couple u(k) with u(-k).

The package splits into layers:

* `field`, `sequences`, `laurent` -- exact/complex scalars, memoized
  bi-infinite sequences, Laurent polynomials in the shift.
* `operators` -- the reflection-operator algebra and its reduction to
  reflection-free recurrences.
* `green`, `roots` -- fundamental systems, Casoratians, explicit Green's
  functions, initial/boundary/reflection solvers, characteristic roots.
* `systems` -- first-order systems with reflection, transfer matrices,
  their Green's function, and the scalar-to-system embedding.
* `oracle` -- independent brute-force checks (iteration and dense window
  solving) used by the test suite and the CLI's verify command.
* `cli`, `problem_io` -- the `reflectrec` command-line tool and its JSON
  problem format.
"""

from .errors import (
    ConditionCountMismatch,
    DegenerateLeading,
    DegenerateProblem,
    DegenerateReduction,
    InexactDivision,
    InputError,
    NoConvergence,
    ProblemFormatError,
    ReflectRecError,
    SingularBlock,
    SingularCasoratian,
    SingularConditions,
    SingularK,
    SingularProblem,
    SingularWindowSystem,
    SingularZ,
    VerificationFailed,
    ZeroOperator,
    ZeroPolynomial,
)
from .field import COMPLEX, RATIONAL, FieldSpec
from .sequences import (
    Seq,
    alternate_signs,
    constant,
    delta,
    even_part,
    from_pairs,
    from_rule,
    odd_part,
    project_even,
    project_odd,
    reflect,
    seq_add,
    seq_equal,
    seq_neg,
    seq_scale,
    seq_sub,
    shift,
    window_values,
    zero_seq,
)
from .laurent import (
    LaurentPoly,
    lp_add,
    lp_apply,
    lp_conjugate,
    lp_divide_exact,
    lp_eq,
    lp_from_pairs,
    lp_monomial,
    lp_mul,
    lp_one,
    lp_render,
    lp_scale,
    lp_sub,
    lp_zero,
    gcd_laurent,
    gcd_star,
    nu,
    psi_factor,
)
from .operators import (
    ReflectionOperator,
    normalize_to_poly,
    op_add,
    op_apply,
    op_compose,
    op_eq,
    op_identity,
    op_reflection,
    op_render,
    op_scale,
    op_sub,
    reduce_full,
    reduce_gcd,
    reduce_star,
)
from .boundary import BoundaryFunctional, PointTerm, evaluation_at
from .green import (
    CharacteristicRoots,
    FundamentalSystem,
    GreenFunction,
    RecurrenceOperator,
    casoratian,
    characteristic_roots,
    classify_region,
    fundamental_system,
    green_eval,
    recurrence_from_poly,
    solve_bvp,
    solve_ivp,
    solve_reflection_bvp,
)
from .systems import (
    BlockPair,
    FirstOrderGreen,
    FundamentalMatrix,
    MatrixFG,
    ScalarEmbedding,
    block_pair,
    condition_system,
    embed_scalar,
    first_order_green,
    fundamental_matrix,
    solve_system,
)
from .oracle import (
    Residual,
    dense_window_solve,
    iterate_scalar,
    residual,
    residual_block,
    residual_first_order,
    residual_recurrence,
    residual_reflection,
    window_system_block,
    window_system_recurrence,
    window_system_reflection,
)
from .problem_io import Problem, load_problem, parse_problem

__version__ = "0.1.0"
