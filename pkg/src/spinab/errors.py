"""Exception types shared across modules."""


class SpinabError(ValueError):
    """Base class for input and evaluation errors raised by spinab."""


class SingularityError(SpinabError):
    """Evaluation point too close to a singular set (origin, pole, axis)."""


class UsageError(SpinabError):
    """Unknown label, malformed expression or inconsistent parameters."""


class DomainError(SpinabError):
    """Argument outside the admissible domain of an operation."""


class NodeError(SpinabError):
    """Wavefunction too close to a node for a logarithmic derivative."""


class PathError(SpinabError):
    """Integration path is malformed or meets a singularity."""


class DegenerateInputError(SpinabError):
    """Input that makes the requested object vanish identically."""


class RejectedBranchError(SpinabError):
    """A solution branch that is not physically admissible.

    ``diagnostic`` carries the numbers that justify the rejection.
    """

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = dict(diagnostic or {})
