"""Exception hierarchy for qfold.

Every failure mode that callers are expected to handle gets its own class;
all of them inherit from QfoldError so a CLI can map them to exit code 1
(input problems) or 2 (verified property violated) uniformly.
"""


class QfoldError(Exception):
    """Base class for all qfold errors."""


class InputError(QfoldError):
    """Malformed or inconsistent input data."""


class PropertyViolation(QfoldError):
    """A checked mathematical property failed; signals a bug or bad data."""


# quiver_core
class NotAPermutation(InputError):
    pass


class IncompatibleWithIncidence(InputError):
    """Automorphism does not commute with edge incidence; names the edge."""


class SelfLoop(InputError):
    pass


class AmbiguousEdgeMap(InputError):
    """Edge permutation cannot be derived (parallel edges)."""


# split_quotient
class NotAdmissible(InputError):
    pass


class IsoNotFound(PropertyViolation):
    """Expected diagram isomorphism does not exist."""


class UnknownVertex(InputError):
    pass


class NotOrbitConstant(InputError):
    pass


class SigmaConstraintViolated(InputError):
    pass


class NotDiagonalizableOverCyclotomicEigenvalues(PropertyViolation):
    pass


# lie_fold
class RepresentativeDependence(PropertyViolation):
    pass


class UnsupportedFamily(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotSymmetrizable(InputError):
    pass


# rep_branch
class NotFiniteType(InputError):
    pass


class NotDominant(InputError):
    pass


class DimensionCapExceeded(InputError):
    pass


class NotInvariantWeight(InputError):
    pass


class StrippingFailure(PropertyViolation):
    """Character stripping produced a negative multiplicity."""


class IndexMismatch(InputError):
    pass


# module_lab
class ShapeMismatch(InputError):
    pass


class RelationViolation(InputError):
    pass


class TooLarge(InputError):
    pass


class NotStable(InputError):
    pass


class NotInvertible(InputError):
    pass


class NotFiniteOrder(InputError):
    pass


class NotAnEmbedding(InputError):
    pass


class PreconditionViolation(InputError):
    pass


class WitnessVerificationFailed(PropertyViolation):
    pass
