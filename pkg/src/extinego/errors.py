"""Exception types shared across the package."""


class ExtinegoError(Exception):
    """Base class for all package errors."""


class ArgumentError(ExtinegoError, ValueError):
    """A caller passed malformed or out-of-range arguments."""


class ConfigError(ExtinegoError, ValueError):
    """A scenario file failed validation.

    `violations` holds every problem found; str() shows the first one.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__(self.violations[0] if self.violations else "invalid scenario")


class ProtocolViolation(ExtinegoError, RuntimeError):
    """A protocol rule was broken (failed precondition, illegal event)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EngineFault(ExtinegoError, RuntimeError):
    """The simulator caught an agent emitting an illegal message.

    Carries the failing condition report and the trace up to the fault so the
    counterexample can be inspected.
    """

    def __init__(self, message, report=None, trace=None):
        super().__init__(message)
        self.report = report
        self.trace = trace
