from __future__ import annotations


class CapacityError(ValueError):
    """Input exceeds the size a solver is configured to handle."""


class PreconditionError(ValueError):
    """Input violates the hypothesis of the statement being checked."""


class Graph6Error(ValueError):
    """Malformed graph6 text. ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset
