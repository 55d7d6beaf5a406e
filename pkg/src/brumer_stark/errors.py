"""Exception types raised across the package."""


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class NonInvolution(AlgebraError):
    pass


class EmptyGroup(AlgebraError):
    pass


class RamifiedEmbedding(AlgebraError):
    pass


class PrecisionExhausted(AlgebraError):
    pass


class NotIntegral(AlgebraError):
    """A rational number with denominator divisible by p was embedded into Z_p."""


class RingMismatch(AlgebraError):
    pass


class TrivialConjugation(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    def __init__(self, message, orbit=None, coefficient=None):
        super().__init__(message)
        self.orbit = orbit
        self.coefficient = coefficient


class EvenCharacter(AlgebraError):
    pass


class SetsOverlap(AlgebraError):
    pass


class MissingRamified(AlgebraError):
    pass


class IncompleteTable(AlgebraError):
    pass


class NonEquivariantTable(AlgebraError):
    pass


class BadConductor(AlgebraError):
    pass


class AlreadyInSets(AlgebraError):
    pass


class RamifiedShift(AlgebraError):
    pass


class NotSubgroup(AlgebraError):
    pass


class NotCocycle(AlgebraError):
    pass


class NotClassModule(AlgebraError):
    pass


class NonNormalSubgroup(AlgebraError):
    pass


class PlaceInSorT(AlgebraError):
    pass


class MissingDecompositionData(AlgebraError):
    pass


class SchemaError(AlgebraError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"


class InconsistentSets(AlgebraError):
    pass


class UnknownElement(AlgebraError):
    pass


class MissingLValues(AlgebraError):
    pass


class CharacterIdentityFails(AlgebraError):
    def __init__(self, message, character=None, lhs=None, rhs=None):
        super().__init__(message)
        self.character = character
        self.lhs = lhs
        self.rhs = rhs


class ActionMismatch(AlgebraError):
    pass


class NotQuadratic(AlgebraError):
    pass


class SizeMismatch(AlgebraError):
    pass


class InvalidModule(AlgebraError):
    """Action matrices that do not define a module over the group."""
