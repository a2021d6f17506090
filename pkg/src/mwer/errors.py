"""Exception hierarchy shared across the package."""


class MwerError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MwerError, ValueError):
    """An input violates a type invariant."""


class InvalidReferenceError(ValidationError):
    """A name (state, prize, act, menu, measure, event) does not resolve."""


class SpaceMismatchError(ValidationError):
    """Two objects are defined over different state or prize spaces."""


class MenuMembershipError(MwerError, ValueError):
    """An act was compared in a menu that does not contain it."""


class RulePreconditionError(MwerError, ValueError):
    """A decision rule or axiom check was called with unsupported inputs."""


class UpdateUndefinedError(MwerError, ValueError):
    """Conditioning or updating on an event the beliefs treat as null."""


class DocumentError(ValidationError):
    """A scenario document is malformed; ``path`` locates the offending entry."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
