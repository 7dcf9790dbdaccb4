"""Shared exception types."""


class ParseError(ValueError):
    """Malformed input file; carries the offending path and line number."""

    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


class InfeasibleError(Exception):
    """No feasible solution exists on the given edge/link set."""


class ResourceLimitError(Exception):
    """A size guard was exceeded; the result would not be trustworthy."""


class ContractViolationError(RuntimeError):
    """An internal guarantee failed, e.g. disjoint-path extraction from a spanner."""
