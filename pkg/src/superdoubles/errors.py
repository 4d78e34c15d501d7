"""Exception types shared across the package."""


class SuperdoublesError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(SuperdoublesError):
    """Operands have incompatible (graded) dimensions."""


class SingularError(SuperdoublesError):
    """A matrix inversion or superdeterminant hit a singular block."""


class NotGradingPreserving(SuperdoublesError):
    """A map was required to preserve the boson/fermion splitting but does not."""


class NotAutomorphism(SuperdoublesError):
    """A matrix was required to be an automorphism of the algebra but is not."""


class InvalidBialgebra(SuperdoublesError):
    """A pair of structure tensors fails the bialgebra compatibility identities."""


class ParseError(SuperdoublesError):
    """Catalog text could not be parsed.

    Carries a human-readable message with line number and field context.
    """


class ConstraintError(SuperdoublesError):
    """An expression references a parameter that was never declared or bound."""


class ConstraintViolation(SuperdoublesError):
    """A parameter binding falls outside the entry's declared domain."""


class UnknownEntry(SuperdoublesError):
    """No catalog entry with the requested name."""
