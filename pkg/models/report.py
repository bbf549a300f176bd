# =============================================================================
# models/report.py
# =============================================================================
# Purpose:
# Output envelopes shared by the CLI (`--json`) and the JSON-RPC server.
#
# - CommandResult: {command, inputs, value, certificates?, elapsed_ms}
# - CheckOutcome / VerifyReport: one row per verification check
# - ErrorReport: what `--json` prints when a command fails
# =============================================================================

from typing import Any

from pydantic import BaseModel, Field


class CommandResult(BaseModel):
    command: str

    # Normalized inputs (parsed patterns, parameters) as plain JSON values
    inputs: dict[str, Any] = Field(default_factory=dict)

    # The headline answer: a width, a boolean, a sequence, a matrix, ...
    value: Any = None

    # Machine-checkable evidence; omitted from JSON when not requested
    certificates: Any | None = None

    elapsed_ms: float = 0.0

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


class CheckOutcome(BaseModel):
    check_id: str

    # The statement being replayed, e.g. "fw({(1..k)^t, (k..1)^t}) = 2t-1"
    locus: str

    parameters: dict[str, Any] = Field(default_factory=dict)
    expected: Any = None
    computed: Any = None
    passed: bool
    elapsed_ms: float = 0.0

    # Free-text remark (e.g. why an expected value is what it is)
    note: str | None = None


class VerifyReport(BaseModel):
    checks: list[CheckOutcome] = Field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(check.passed for check in self.checks)

    def summary(self) -> dict[str, int]:
        passed = sum(1 for check in self.checks if check.passed)
        return {"passed": passed, "failed": len(self.checks) - passed}


class ErrorReport(BaseModel):
    command: str
    error: str
    message: str
    position: int | None = None
