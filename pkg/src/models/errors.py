"""
Exception hierarchy for rate region computations
"""
from typing import Optional


class RateRegionError(Exception):
    """Base class for every error raised by the library"""


class DegenerateChannelError(RateRegionError):
    """A direct link gain is zero, so the channel has no standard form"""


class InfeasibleCancellationError(RateRegionError):
    """Cancellation power gamma^2 K exceeds the available power"""


class InfeasibleSplitError(RateRegionError):
    """Power split fraction outside its admissible range"""


class UndefinedRatioError(RateRegionError):
    """A DPC ratio alpha^2/P is requested for a zero split power"""


class EncodingModeError(RateRegionError):
    """Scheme encoding mode does not match the requested system"""


class ChannelCaseError(RateRegionError):
    """Scheme family requested for a channel of another interference case"""


class SchemeValidationError(RateRegionError):
    """A finite-alphabet scheme table is malformed or not normalized"""

    def __init__(self, message: str, table: Optional[str] = None, row: Optional[int] = None):
        self.table = table
        self.row = row
        where = ""
        if table is not None:
            where = f" [{table}" + (f", row {row}" if row is not None else "") + "]"
        super().__init__(message + where)


class ScenarioConfigError(RateRegionError):
    """Invalid scenario configuration; `field` is the dotted path of the offending entry"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
