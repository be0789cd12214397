"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: ParameterError -> 2, ResourceError -> 3.
"""


class WeylsumError(Exception):
    """Base class for all library errors."""

    tag = "error"


class ParameterError(WeylsumError):
    """An argument violates a documented precondition."""

    tag = "parameter-error"


class ResourceError(WeylsumError):
    """A work or memory guard refused the computation.

    The message always includes the estimated requirement so callers can
    resize the request.
    """

    tag = "resource-error"


class EvaluationError(WeylsumError):
    """A value needed during evaluation is missing or inconsistent."""

    tag = "evaluation-error"
