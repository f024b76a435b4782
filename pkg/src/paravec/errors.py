"""Exception hierarchy. The CLI maps every ParavecError to exit code 2."""


class ParavecError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(ParavecError):
    """Malformed input file (wrong column count, bad number, duplicate token)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DataError(ParavecError):
    """Structurally valid input that violates a data invariant (e.g. empty sentence)."""


class DegenerateVectorError(ParavecError):
    """Cosine similarity requested for a zero-norm vector."""


class DegenerateDataError(ParavecError):
    """Correlation requested for data with zero variance or fewer than two points."""


class NumericError(ParavecError):
    """Non-finite value encountered where a finite one is required."""


class ContractError(ParavecError):
    """Caller violated an API contract (shape mismatch, inconsistent arguments)."""


class DomainError(ParavecError):
    """Scalar argument outside its documented domain."""
