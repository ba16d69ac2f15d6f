"""Errors raised by the simplicial contextuality toolkit."""
from typing import Iterable, List


class ContextualityError(Exception):
    """Base class for all toolkit errors."""


class UsageError(ContextualityError):
    """Operands or arguments that do not belong together (e.g. mixed semirings)."""


class PreconditionError(ContextualityError):
    """An operation was called on inputs that violate its precondition."""


class NormalizationError(PreconditionError):
    """Weights that should sum to one do not."""


class UnsupportedError(ContextualityError):
    """The request is outside what the toolkit implements."""


class NotInvertibleError(ContextualityError):
    """A simplicial distribution has no inverse in its convex monoid."""


class InvalidModelError(ContextualityError):
    """A space, map or simplicial distribution failed validation."""

    def __init__(self, errors: Iterable[str], what: str = 'model'):
        self.errors: List[str] = list(errors)
        super().__init__(f"invalid {what}: " + '; '.join(self.errors))


class ModelFileError(ContextualityError):
    """A model, space or configuration file could not be parsed."""
