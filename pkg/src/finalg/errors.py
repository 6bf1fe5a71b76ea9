"""Exception hierarchy.

Every error raised by the library derives from :class:`FinAlgError`.  The CLI
maps :class:`TheoremViolation` to exit code 3 and everything else to 2.
"""


class FinAlgError(Exception):
    pass


# fields
class NonPrime(FinAlgError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class DegreeZero(FinAlgError, ValueError):
    pass


class FieldTooLarge(FinAlgError, ValueError):
    pass


class FieldMismatch(FinAlgError, ValueError):
    pass


class DivisionByZero(FinAlgError, ZeroDivisionError):
    pass


class BadSubfieldSize(FinAlgError, ValueError):
    pass


# polynomials
class NotMonic(FinAlgError, ValueError):
    pass


class ConstantInput(FinAlgError, ValueError):
    pass


class DegreeTooLarge(FinAlgError, ValueError):
    pass


# algebras
class InvalidStructureConstants(FinAlgError, ValueError):
    pass


class BadCayleyTable(FinAlgError, ValueError):
    def __init__(self, axiom, detail=""):
        super().__init__(f"Cayley table fails {axiom}" + (f": {detail}" if detail else ""))
        self.axiom = axiom


class InvalidAugmentation(FinAlgError, ValueError):
    pass


class BaseMismatch(FinAlgError, ValueError):
    pass


class AlgebraMismatch(FinAlgError, ValueError):
    pass


class NonPrimeBase(FinAlgError, ValueError):
    pass


class BudgetExceeded(FinAlgError):
    def __init__(self, size, budget):
        super().__init__(f"enumeration of {size} elements exceeds budget {budget}")
        self.size = size
        self.budget = budget


class NotConnectedEvidence(FinAlgError):
    pass


class NotATensor(FinAlgError, ValueError):
    pass


# decompositions
class NotCommutative(FinAlgError, ValueError):
    pass


class ScalarElement(FinAlgError, ValueError):
    pass


class NotFixed(FinAlgError, ValueError):
    pass


class NotIdempotent(FinAlgError, ValueError):
    pass


# summand calculus
class PreconditionFailed(FinAlgError):
    pass


class TheoremViolation(FinAlgError, AssertionError):
    pass


class DemoAssertionFailed(TheoremViolation):
    def __init__(self, step, detail):
        super().__init__(f"step {step}: {detail}")
        self.step = step
