"""Exception types shared across the package."""


class GraphInputError(ValueError):
    """Malformed graph construction input (bad vertex index, loop, duplicate edge)."""


class Graph6Error(ValueError):
    """Malformed graph6 text; carries the byte offset of the first bad byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; carries graph6 certificates when available.

    Raised when two routes that must agree disagree, or when a search that
    must succeed by a proven statement comes up empty.  Never raised for bad
    user input.
    """

    def __init__(self, message: str, certificates: list[str] | None = None):
        if certificates:
            message = f"{message}; certificates: {', '.join(certificates)}"
        super().__init__(message)
        self.certificates = certificates or []
