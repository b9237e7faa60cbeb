"""Exception types raised across the library."""


class HoradamError(Exception):
    """Base class for all library-specific errors."""


class ZeroToNegativePower(HoradamError):
    """0 raised to a negative exponent."""


class NegativeK(HoradamError):
    """binomial() called with k < 0."""


class DiscriminantMismatch(HoradamError):
    """Arithmetic between quadratic-extension elements over different discriminants."""


class NonInvertible(HoradamError):
    """Quadratic-extension element with zero norm has no inverse."""


class DegenerateRoot(HoradamError):
    """p^2 - 4q = 0: repeated characteristic root, no Binet form."""


class EmptyRange(HoradamError):
    """term_range() called with lo > hi."""


class ConfigViolation(HoradamError):
    """A recurrence configuration failed its probe (or had a vanishing coefficient)."""


class DegenerateStride(HoradamError):
    """Alternating-stride lemma variant called with d = c (stride zero)."""


class SingularSummand(HoradamError):
    """A reciprocal sum touches a vanishing denominator."""

    def __init__(self, j, index):
        super().__init__(f"denominator term at index {index} (summand j={j}) is zero")
        self.j = j
        self.index = index


class GuardViolation(HoradamError):
    """A lemma coefficient required to be nonzero vanished for this assignment."""

    def __init__(self, name, detail=""):
        msg = f"guard violated: {name} = 0"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.name = name


class EvaluationError(HoradamError):
    """An identity could not be evaluated for the given assignment."""


class UnknownIdentity(HoradamError):
    """Identity key not present in the registry."""


class CompositeModulus(HoradamError):
    """Benchmark modulus must be prime so every nonzero residue is invertible."""
