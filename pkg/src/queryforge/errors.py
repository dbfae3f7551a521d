"""Exception types shared across the toolkit."""


class ForgeError(Exception):
    """Base class for all queryforge errors."""


class SchemaError(ForgeError):
    """Schema file is malformed or violates a catalog invariant."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{message} (at {location})" if location else message)


class DataLoadError(ForgeError):
    """Table data file is missing, ragged, or has a value of the wrong type."""


class StatisticsError(ForgeError):
    """Statistics are missing or unusable for the requested operation."""


class SqlSyntaxError(ForgeError):
    """SQL text does not parse; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class UnsupportedSqlError(ForgeError):
    """SQL parses but uses a construct outside the supported subset."""

    def __init__(self, construct: str, offset: int = 0):
        self.construct = construct
        self.offset = offset
        super().__init__(f"unsupported construct: {construct}")


class GenerationError(ForgeError):
    """Workload generation cannot proceed (bad request, missing statistics)."""


class ProviderError(ForgeError):
    """A provider call failed (network, HTTP status, empty response)."""


class LabelingError(ForgeError):
    """A query cannot be labeled against the loaded data."""


class PlanningError(ForgeError):
    """Plan enumeration or costing failed for a query."""


class ConfigError(ForgeError):
    """Run configuration is missing, malformed, or references absent paths."""
