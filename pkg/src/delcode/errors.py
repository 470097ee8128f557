"""Exception hierarchy shared by the library and the CLI."""


class DelcodeError(Exception):
    """Base class for all library errors."""


class InputError(DelcodeError, ValueError):
    """Malformed or out-of-range input (CLI exit status 1)."""


class ResourceGuardError(DelcodeError):
    """A run was refused because it exceeds a configured limit (exit status 2)."""


class VerificationError(DelcodeError):
    """A verifier found a counterexample to a claimed property (exit status 3)."""
