class PreconditionError(ValueError):
    """Input violates an operation's precondition (CLI exit code 2)."""


class InvariantViolation(RuntimeError):
    """A law that must hold exactly did not; indicates a bug or bad data."""
