"""Exception hierarchy shared by every module."""


class IsingBenchError(Exception):
    """Base class for all errors raised by the package."""


class ContractViolationError(IsingBenchError, ValueError):
    """An operation was called outside its precondition."""


class ParameterError(IsingBenchError, ValueError):
    """Generator or experiment parameters are invalid."""


class CapacityError(IsingBenchError, RuntimeError):
    """Exhaustive enumeration was requested above the configured spin cap."""


class MissingInputError(IsingBenchError, FileNotFoundError):
    """A problem, minima or result file needed by a command does not exist."""


class ReportError(IsingBenchError, ValueError):
    """Results cannot be turned into the requested report."""
