"""Exception hierarchy shared by every pargal module."""


class PargalError(Exception):
    """Base class for all engine errors."""


class CapacityExceeded(PargalError):
    pass


class IndexOutOfRange(PargalError, IndexError):
    pass


class InvalidGroupTable(PargalError):
    pass


class NotNormal(PargalError):
    pass


class NotAbelian(PargalError):
    pass


class DimensionMismatch(PargalError):
    pass


class NotGlobal(PargalError):
    pass


class ValidationFailed(PargalError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class GroupMismatch(PargalError):
    pass


class RingMismatch(PargalError):
    pass


class Indeterminate(PargalError):
    """An isomorphism search ran past its deadline without deciding."""


class TransferFailed(PargalError):
    """An internal consistency check failed; this points at an engine bug."""

    def __init__(self, check, detail=""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check


class ParseError(PargalError):
    pass
