"""Error taxonomy for the solver pipeline.

Every failure mode a caller is expected to branch on gets its own class so
the CLI can map them to stable exit codes.  They all derive from
ReflectRecError; the three intermediate groups (InputError, SingularProblem,
DegenerateProblem) mirror the exit-code contract: 2, 3 and 4 respectively,
with VerificationFailed on its own as 5.
"""


class ReflectRecError(Exception):
    """Base class for all library errors."""


class InputError(ReflectRecError):
    """Malformed or inconsistent problem data (exit code 2 in the CLI)."""


class ProblemFormatError(InputError):
    """A problem file failed to parse or validate."""


class ZeroPolynomial(InputError):
    """An operation required a nonzero Laurent polynomial."""


class ZeroOperator(InputError):
    """An operation required a nonzero reflection operator."""


class InexactDivision(InputError):
    """Laurent division left a nonzero remainder."""


class SingularProblem(ReflectRecError):
    """A matrix that the theory requires to be invertible is singular
    (exit code 3 in the CLI)."""


class SingularCasoratian(SingularProblem):
    """A Casoratian determinant vanished; the Green's function formula
    is unusable for this operator/window."""


class SingularConditions(SingularProblem):
    """The boundary-condition matrix is singular: the conditions do not
    pin a unique solution."""


class ConditionCountMismatch(SingularProblem):
    """Number of boundary functionals does not match the number of free
    constants of the reduced problem."""


class SingularBlock(SingularProblem):
    """One of the two assembled 2n x 2n block matrices is singular."""


class SingularK(SingularProblem):
    """The first-order system matrix K is singular; negative powers are
    required and do not exist."""


class SingularZ(SingularProblem):
    """The condition matrix Z of the system solver is singular."""


class SingularWindowSystem(SingularProblem):
    """The dense window system of the brute-force oracle is singular."""


class DegenerateProblem(ReflectRecError):
    """The reduction step degenerated (exit code 4 in the CLI)."""


class DegenerateReduction(DegenerateProblem):
    """The reduced Laurent polynomial S = L * Rtilde is identically zero,
    so the reduction carries no information (the operator's kernel is
    infinite-dimensional; e.g. L = D - phi*)."""


class DegenerateLeading(DegenerateProblem):
    """The leading-coefficient gate a_n a_{-n} - b_n b_{-n} of the
    scalar-to-system embedding vanished; uniqueness is not guaranteed."""


class VerificationFailed(ReflectRecError):
    """A candidate solution failed the mandatory residual or boundary
    re-check (exit code 5 in the CLI)."""


class NoConvergence(ReflectRecError):
    """The root-finding iteration did not converge within its budget."""
