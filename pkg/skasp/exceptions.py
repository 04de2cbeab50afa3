"""Exceptions raised by skasp."""
from typing import Any, Optional, Sequence


class SkaspError(Exception):
    """Base class for skasp errors."""


class SketchSyntaxError(SkaspError):
    """The input text is not a well-formed sketch or program."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        """Init SketchSyntaxError."""
        super().__init__(message, line, column)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        """Diagnostic with location."""
        return f"line {self.line}, column {self.column}: {self.message}"


class ValidationError(SkaspError):
    """A parsed sketch violates safety, arity or example rules."""

    def __init__(self, report: Any) -> None:
        """Init ValidationError with a ValidationReport."""
        super().__init__(report)
        self.report = report

    def __str__(self) -> str:
        """All violations, one per line."""
        return "\n".join(str(violation) for violation in self.report.violations)


class NonStratifiedError(SkaspError):
    """The program has a cycle through a negative dependency."""

    def __init__(self, cycle: Sequence[str]) -> None:
        """Init NonStratifiedError with the witness cycle."""
        super().__init__(tuple(cycle))
        self.cycle = tuple(cycle)

    def __str__(self) -> str:
        """Witness cycle."""
        return "program is not stratified: " + " -> ".join(self.cycle)


class RewriteError(SkaspError):
    """The sketch cannot be rewritten into a meta-program."""


class GroundingError(SkaspError):
    """The program cannot be grounded."""


class ArithmeticOverflowError(GroundingError):
    """An arithmetic result left the signed 64-bit range."""


class BackendLimitationError(SkaspError):
    """The selected backend does not handle this program shape."""


class SolverError(SkaspError):
    """The external solver failed."""

    def __init__(self, message: str, returncode: Optional[int] = None, stderr: str = "") -> None:
        """Init SolverError."""
        super().__init__(message, returncode, stderr)
        self.message = message
        self.returncode = returncode
        self.stderr = stderr

    def __str__(self) -> str:
        """Solver message plus diagnostics."""
        details = f" (exit code {self.returncode})" if self.returncode is not None else ""
        return f"{self.message}{details}" + (f": {self.stderr.strip()}" if self.stderr.strip() else "")


class SolverNotFoundError(SolverError):
    """The solver executable could not be resolved."""


class SolverTimeoutError(SolverError):
    """The solver did not finish within the timeout."""


class SearchSpaceTooLargeError(SkaspError):
    """Enumeration was refused because the search space exceeds the cap."""

    def __init__(self, size: int, cap: int) -> None:
        """Init SearchSpaceTooLargeError."""
        super().__init__(size, cap)
        self.size = size
        self.cap = cap

    def __str__(self) -> str:
        """Size and cap."""
        return f"search space has {self.size} assignments, cap is {self.cap}"
