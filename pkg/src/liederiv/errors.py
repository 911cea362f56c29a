"""Exception hierarchy shared by every module of the package."""


class LieDerivError(Exception):
    """Base class for all package errors."""


class EvenCharacteristic(LieDerivError):
    """The modulus is 2 or is not prime."""


class NotAssociative(LieDerivError):
    def __init__(self, triple):
        super().__init__(f"multiplication is not associative on basis triple {triple}")
        self.triple = triple


class NoIdentity(LieDerivError):
    def __init__(self, element):
        super().__init__(f"supplied unit fails on basis element {element}")
        self.element = element


class SizeTooSmall(LieDerivError):
    """Matrix size below 3."""


class IdealMismatch(LieDerivError):
    """The supplied subspace is not a two-sided ideal of the base algebra."""


class RingMismatch(LieDerivError):
    """Operands live in different matrix rings."""


class MembershipError(LieDerivError):
    """A matrix entry lies outside its admissible position space."""


class FormulaMismatch(LieDerivError):
    """A solved subspace disagrees with its closed-form description."""


class DimensionMismatch(LieDerivError):
    """Operand shapes do not conform."""


class InvalidParams(LieDerivError):
    def __init__(self, violations):
        names = ", ".join(v.condition for v in violations)
        super().__init__(f"family parameters violate: {names}")
        self.violations = violations


class WrongSize(LieDerivError):
    """A derivation family is not defined for this matrix size."""


class ShapeViolation(LieDerivError):
    """Support pattern of a Lie derivation contradicts the expected shape."""


class HypothesisViolation(LieDerivError):
    """Input does not satisfy the hypotheses of the decomposition theorem."""


class InternalExtractionError(LieDerivError):
    """An extracted component failed its own family validator."""


class StagePatternViolation(LieDerivError):
    """A pipeline stage left a residual with an unexpected support."""


class CapacityExceeded(LieDerivError):
    """Additive dimension of the ring exceeds the configured cap."""


class TheoremFailure(LieDerivError):
    """A Lie derivation escapes the span of the families, or leaves a residual."""

    def __init__(self, message, witness=None, report=None):
        super().__init__(message)
        self.witness = witness
        self.report = report


class ConfigError(LieDerivError):
    """Malformed instance configuration or input file."""
