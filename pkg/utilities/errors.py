# =============================================================================
# utilities/errors.py
# =============================================================================
# Purpose:
# Exception types shared by the engines, the CLI and the JSON-RPC server.
#
# The CLI maps them to exit codes (parse problems and invalid inputs → 2,
# everything else → 1) and the server maps them to JSON-RPC error objects
# (see models/json_rpc.py).
# =============================================================================


class FormwidthError(Exception):
    """Base class for every error raised on purpose by this package."""
    pass


class PatternParseError(FormwidthError):
    """Raised when a sequence, matrix or binary-pattern literal cannot be parsed."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(message)

    def annotated(self) -> str:
        """Return the message followed by the literal and a caret under the bad spot."""
        if not self.text:
            return str(self)
        caret = " " * self.position + "^"
        return f"{self} (at position {self.position})\n  {self.text}\n  {caret}"


class InvalidPatternError(FormwidthError):
    """Raised for structurally invalid inputs (bad parameters, bad matrices, mixed families)."""
    pass


class GuardExceededError(FormwidthError):
    """Raised when a desk-scale guard (enumeration cap, n guard, length guard) would be exceeded."""
    pass


class CeilingExceededError(FormwidthError):
    """Raised when the width search passes the configured ceiling on s without an answer."""
    pass


class InconsistencyError(FormwidthError):
    """Raised when two independent computations disagree (dual path, witness re-check)."""
    pass
