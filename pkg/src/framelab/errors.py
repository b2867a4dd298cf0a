"""Exception hierarchy shared by all framelab modules."""


class FramelabError(Exception):
    """Base class for every error raised deliberately by framelab."""


class DimensionError(FramelabError, ValueError):
    """Shapes, lengths or signatures do not line up."""


class ContractError(FramelabError, ValueError):
    """An input violates a documented precondition (e.g. not Hermitian)."""


class InfeasibleError(FramelabError, ValueError):
    """The requested object cannot exist for the given parameters."""


class GenerationError(FramelabError, RuntimeError):
    """Rejection sampling exhausted its retry budget."""


class PreconditionError(FramelabError, ValueError):
    """An instance does not satisfy the hypotheses it is built on."""


class UnsupportedError(FramelabError, ValueError):
    """The operation is deliberately not provided for these inputs."""
