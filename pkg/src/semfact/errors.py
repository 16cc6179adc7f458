"""Exception hierarchy shared by every construction in the package."""


class SemfactError(Exception):
    """Base class; never raised directly."""


class InvalidInput(SemfactError):
    """Malformed user input (bad JSON, unknown keys, unknown identifiers)."""


class MissingComposite(InvalidInput):
    pass


class NonAssociative(InvalidInput):
    pass


class BadEndpoints(InvalidInput):
    pass


class NotFunctorial(InvalidInput):
    pass


class NotNatural(InvalidInput):
    pass


class NotComposable(SemfactError):
    pass


class NotParallel(SemfactError):
    pass


class BoundaryMismatch(SemfactError):
    pass


class BadBoundary(SemfactError):
    pass


class IllDefined(SemfactError):
    """A construction that should be well defined on classes is not."""


class Incompatible(SemfactError):
    """A pair of 2-cells fails the compatibility needed for induction."""


class NotADescentPair(SemfactError):
    pass


class NotAnAlgebraPair(SemfactError):
    pass


class NoKanExtension(SemfactError):
    pass


class PreservationRequired(SemfactError):
    pass


class CertificationFailure(SemfactError):
    """A universal property failed its exhaustive check (always a bug)."""


class BoundExceeded(SemfactError):
    def __init__(self, what, count, limit):
        self.what = what
        self.count = count
        self.limit = limit
        super().__init__(f"{what}: candidate count {count} exceeds limit {limit}")
