"""Exception hierarchy shared by every package."""
from typing import Any, Dict, Optional


class RicciFlowError(Exception):
    """Base class for all project errors."""


class InvalidArgumentError(RicciFlowError, ValueError):
    """An argument violates the documented precondition of an operation."""


class DisconnectedGraphError(InvalidArgumentError):
    """An operation that needs a connected graph received a disconnected one."""

    def __init__(self, component_count: int, message: Optional[str] = None):
        self.component_count = component_count
        super().__init__(
            message or f"Graph is disconnected: {component_count} connected components"
        )


class GraphFileError(InvalidArgumentError):
    """A graph file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{message}")


class ComputationError(RicciFlowError, RuntimeError):
    """A numerical routine failed; ``diagnostics`` describes the input."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        self.diagnostics = diagnostics or {}
        super().__init__(f"{message} {self.diagnostics}" if self.diagnostics else message)


class InvalidStateError(RicciFlowError, RuntimeError):
    """An object is in a state that does not support the requested operation."""
