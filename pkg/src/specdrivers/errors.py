"""Exception hierarchy shared by every layer of the package."""


class SpecDriverError(Exception):
    """Base class for all errors raised by specdrivers."""


class ResolutionError(SpecDriverError, KeyError):
    """An identifier (condition, action, atom, template, ...) does not resolve."""

    def __str__(self):
        return Exception.__str__(self)


class GuardError(SpecDriverError):
    """An action was applied to a state on which its guard is false."""

    def __init__(self, action_id, message=None):
        self.action_id = action_id
        super().__init__(message or f"guard of action {action_id!r} does not hold")


class ModelMismatchError(SpecDriverError):
    """Two states belonging to different models were compared."""


class InstantiationError(SpecDriverError):
    """A template could not be instantiated with the given bindings."""

    def __init__(self, message, offenders=()):
        self.offenders = tuple(offenders)
        super().__init__(message)


class UnsupportedPatternError(SpecDriverError):
    """A (pattern, scope) combination has no validated formula."""


class ConfigError(SpecDriverError):
    """A suite, binding or command line could not be resolved."""

    def __init__(self, message, problems=()):
        self.problems = tuple(problems)
        if self.problems:
            message = message + "\n" + "\n".join(f"  - {p}" for p in self.problems)
        super().__init__(message)
