"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An operation would exceed its configured size guard."""


class GenerationError(RuntimeError):
    """A randomized generator exhausted its restart budget."""
