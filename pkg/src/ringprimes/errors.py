"""Shared error types, mapped to process exit codes by the command line front end."""


class CapacityError(RuntimeError):
    """A request exceeds a configured memory or enumeration budget (exit code 3)."""


class InvariantError(AssertionError):
    """An internal consistency check failed; results cannot be trusted (exit code 4)."""


class CheckpointError(ValueError):
    """A checkpoint file is malformed, has the wrong version, or belongs to a different run."""
