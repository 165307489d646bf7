"""Exception hierarchy shared by every module.

Two failure families matter to callers: mathematical failures (an axiom or
a verified law does not hold for the given data) and operational failures
(malformed input, size caps, missing files).  The CLI maps the former to
exit code 1 and the latter to exit code 2.
"""


class GpdError(Exception):
    """Base class for all package errors."""


class MathError(GpdError):
    """A mathematical requirement failed; carries a witness."""


class OperationalError(GpdError):
    """Bad input shape, exceeded cap, or I/O trouble."""


class AxiomViolation(MathError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"axiom {axiom!r} fails at witness {self.witness}")


class ActionViolation(MathError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(f"action law {law!r} fails at witness {self.witness}")


class MembershipError(MathError):
    pass


class NotAnIsomorphism(MathError):
    pass


class NotASubgroupoid(MathError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"subset is not a subgroupoid, witness {witness}")


class PreconditionFailed(MathError):
    pass


class ShapeError(OperationalError):
    pass


class BaseMismatch(OperationalError):
    pass


class EmptySubset(OperationalError):
    pass


class CapExceeded(OperationalError):
    def __init__(self, message, predicted=None):
        self.predicted = predicted
        super().__init__(message)
