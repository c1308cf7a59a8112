class SparseDetectError(Exception):
    """Base class for all errors raised by sparsedetect"""
    pass


class DomainError(SparseDetectError, ValueError):
    """An argument lies outside the domain of the requested operation"""
    pass


class DegenerateResponseError(DomainError):
    pass


class VarianceModeError(DomainError):
    pass


class ConfigConflictError(DomainError):
    pass


class ResourceLimitError(SparseDetectError, RuntimeError):
    pass
