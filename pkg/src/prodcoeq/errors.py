class AlgebraError(ValueError):
    """Structural problem with an algebra, map or relation."""


class SignatureMismatch(AlgebraError):
    pass


class NotPointedError(AlgebraError):
    pass


class NotHomomorphismError(AlgebraError):
    pass


class TermError(AlgebraError):
    """Unbound variable or arity mismatch while handling a term."""


class CapExceededError(RuntimeError):
    """A bounded construction would exceed its configured size cap."""

    def __init__(self, message, cap, required=None):
        super().__init__(message)
        self.cap = cap
        self.required = required
