"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class CliffordError(Exception):
    """Base class for all domain errors raised by clifflogic."""


class ConfigurationError(CliffordError, ValueError):
    """Invalid signature, index out of range, or inconsistent configuration."""


class RingMismatchError(CliffordError, TypeError):
    """Operands live over different coefficient rings or signatures."""


class UnsupportedRingError(CliffordError, TypeError):
    """Operation not defined over the requested ring."""


class DomainError(CliffordError, ValueError):
    """Argument outside the domain of the operation."""


class BoundExceededError(CliffordError, ValueError):
    """A desk-scale enumeration or matrix bound would be exceeded."""


class ParseError(CliffordError, ValueError):
    """Malformed expression text, with 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
