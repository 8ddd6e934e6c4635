"""Exception hierarchy shared across the package."""


class BiquadError(Exception):
    """Base class for all errors raised by biquad."""


class NotSquareFree(BiquadError, ValueError):
    pass


class Equal(BiquadError, ValueError):
    pass


class OutOfRange(BiquadError, ValueError):
    pass


class FieldMismatch(BiquadError, ValueError):
    pass


class ParseError(BiquadError, ValueError):
    pass


class SelfCheckFailed(BiquadError):
    pass


class NotAnInteger(BiquadError, ValueError):
    pass


class NotTotallyNonnegative(BiquadError, ValueError):
    pass


class WrongBasisType(BiquadError, ValueError):
    pass


class InadmissibleParameter(BiquadError, ValueError):
    pass


class BudgetExceeded(BiquadError):
    """Search stopped on a budget limit; ``bound`` is the rank bound proven so far."""

    def __init__(self, message: str, bound: int = 0, certificate=None):
        super().__init__(message)
        self.bound = bound
        self.certificate = certificate


class Refuted(BiquadError):
    """A representation with fewer squares than claimed exists."""

    def __init__(self, message: str, certificate):
        super().__init__(message)
        self.certificate = certificate


class FormulaMismatch(BiquadError):
    def __init__(self, label, formula, direct):
        super().__init__(f"{label}: closed form {formula} != direct {direct}")
        self.label = label
        self.formula = formula
        self.direct = direct


class IdentityFailed(BiquadError):
    def __init__(self, name, t, lhs, rhs):
        super().__init__(f"{name} fails at t={t}: {lhs} != {rhs}")
        self.name = name
        self.t = t
        self.lhs = lhs
        self.rhs = rhs
