from __future__ import annotations


class PivotalError(Exception):
    """Base exception for pivotal-predict errors."""


class ValidationError(PivotalError):
    """A parameter or input violates its constraints."""

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


class DomainError(ValidationError):
    """Probability or coverage level outside the open unit interval."""


class DegenerateDensityError(PivotalError):
    """Density has no usable mass (all zero, non-finite, or a single node)."""


class NoOverlapError(PivotalError):
    """Operand supports are disjoint; their product carries no mass."""


class GridMismatchError(PivotalError):
    """Operand grids cannot be brought onto a common step."""


class ConfigError(PivotalError):
    """Base error for model configuration documents."""


class ConfigSyntaxError(ConfigError):
    """Configuration document is not well-formed YAML."""

    def __init__(self, message: str, line: int | None, column: int | None) -> None:
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ConfigSchemaError(ConfigError):
    """Configuration document has a missing, unknown or mistyped key."""

    def __init__(self, key: str, message: str) -> None:
        self.key = key
        super().__init__(f"{key}: {message}")
