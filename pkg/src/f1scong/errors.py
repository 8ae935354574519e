"""Exception hierarchy shared by all modules."""


class F1ScongError(Exception):
    """Base class for every error raised by this package."""


class NotSaturated(F1ScongError):
    pass


class Inconsistent(F1ScongError):
    """A character assignment admits no consistent homomorphism."""


class NotASubgroup(F1ScongError):
    pass


class NotAFace(F1ScongError):
    pass


class NotPointed(F1ScongError):
    pass


class NotAPointedGroup(F1ScongError):
    pass


class MonoidAxiomError(F1ScongError):
    pass


class ExponentOutsideMonoid(F1ScongError):
    pass


class NotASubgroupOfFaceLattice(F1ScongError):
    pass


class ContextMismatch(F1ScongError):
    pass


class NotContained(F1ScongError):
    pass


class ChainDeadEnd(F1ScongError):
    """Raised when chain enumeration reaches a node with no cover below the target."""

    def __init__(self, message, partial_chain=()):
        super().__init__(message)
        self.partial_chain = list(partial_chain)


class MeetsNullIdeal(F1ScongError):
    pass


class NotVisible(F1ScongError):
    pass


class MalformedPresentation(F1ScongError):
    pass


class ParseError(F1ScongError):
    pass


class ValidationError(F1ScongError):
    """Input is well formed but violates a structural axiom (e.g. of a fan)."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
