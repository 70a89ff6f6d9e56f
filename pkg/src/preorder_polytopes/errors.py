"""Exception hierarchy.

InputError covers bad user input (CLI exit code 2).  InternalError marks
conditions that can only arise from a bug, e.g. a proven identity failing
(CLI exit code 3).
"""


class PplError(Exception):
    pass


class InputError(PplError):
    pass


class OverlapError(InputError):
    """Vertex element sets do not partition the ground set."""


class CycleError(InputError):
    """Transitive closure of the relation creates a 2-cycle."""


class SchemaError(InputError):
    """Malformed preorder JSON."""


class BadParameters(InputError):
    """Invalid family parameters."""


class SizeLimit(InputError):
    """Requested size exceeds the configured maximum."""


class PrecondError(InputError):
    """A series operation was called outside its domain."""


class DuplicateNode(InputError):
    """Interpolation nodes are not pairwise distinct."""


class PointNotInPoset(InputError):
    pass


class NoMinimumVertex(InputError):
    pass


class InternalError(PplError):
    pass


class NonIntegralHStar(InternalError):
    """h* coefficients came out non-integral or negative."""


class NotPalindromicHStar(InternalError):
    """h* of a reflexive polytope failed to be palindromic."""


class SupportError(InternalError):
    """M-triangle coefficient found outside the 0 <= a <= b support."""


class NodeCollision(InternalError):
    """Two q-integer interpolation nodes coincide."""


class DegreeOverflow(InternalError):
    """An interpolant exceeded its provable degree bound."""


class UnboundedError(InternalError):
    """A recession direction was found during vertex enumeration."""


class ConvergenceFailure(InternalError):
    """Numeric root finding failed to produce finite roots."""
