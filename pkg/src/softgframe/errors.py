"""Exception hierarchy shared by every module of the package."""


class SoftGFrameError(Exception):
    """Base class for all errors raised by softgframe."""


class ParameterMismatchError(SoftGFrameError, ValueError):
    """Two soft objects are defined over different parameter sets."""


class ShapeMismatchError(SoftGFrameError, ValueError):
    """Dimensions or block structures do not line up."""


class ContractViolation(SoftGFrameError):
    """An operation was called outside its mathematical precondition."""


class NotHermitianError(ContractViolation):
    pass


class NotPositiveDefiniteError(ContractViolation):
    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class NotAFrameError(ContractViolation):
    pass


class PreconditionError(ContractViolation):
    pass


class VerificationError(SoftGFrameError):
    """A computed identity failed its numerical check."""


class FrameSpecError(SoftGFrameError, ValueError):
    """A JSON document could not be decoded; ``path`` locates the problem."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
