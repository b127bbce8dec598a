"""Exception hierarchy shared by all modules."""


class ScottPersistError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DimensionError(ScottPersistError, ValueError):
    pass


class UnsupportedPosetError(ScottPersistError):
    """The operation is not defined for this poset variant."""


class PreconditionError(ScottPersistError, ValueError):
    """A documented precondition of an operation does not hold."""


class NotComputableError(ScottPersistError):
    """The pair lies outside the class where distances are computed automatically."""


class ComplexMismatchError(ScottPersistError):
    """A morphism's cell complex does not refine the modules it is checked against."""


class TranslationError(ScottPersistError):
    """A translation family violates a required TR condition."""


class CommutationError(ScottPersistError):
    """Step matrices of a cell module (or a morphism) fail to commute."""
