# =============================================================================
# models/job.py
# =============================================================================
# Purpose:
# Job models for the JSON-RPC server.
#
# A job is one CLI-equivalent command (`fw`, `extremal`, `verify`, ...) run on
# the server. It is computed once and kept in memory so it can be fetched
# again by id.
# =============================================================================

# -----------------------------------------------------------------------------
# Imports
# -----------------------------------------------------------------------------

from datetime import datetime                  # Status timestamps
from enum import Enum                          # Fixed job states
from typing import Any                         # Free-form command arguments
from uuid import uuid4                         # Job ids

from pydantic import BaseModel, Field

from models.report import CommandResult, ErrorReport


# -----------------------------------------------------------------------------
# JobState: lifecycle of a job
# -----------------------------------------------------------------------------

class JobState(str, Enum):
    SUBMITTED = "submitted"
    WORKING = "working"
    COMPLETED = "completed"
    FAILED = "failed"


class JobStatus(BaseModel):
    state: JobState
    timestamp: datetime = Field(default_factory=datetime.now)


# -----------------------------------------------------------------------------
# Job: one computation and its outcome
# -----------------------------------------------------------------------------

class Job(BaseModel):
    id: str
    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    status: JobStatus

    # Exactly one of these is set once the job has finished
    result: CommandResult | None = None
    error: ErrorReport | None = None


# -----------------------------------------------------------------------------
# Parameter models for API requests
# -----------------------------------------------------------------------------

class JobComputeParams(BaseModel):
    # Generated when the caller does not pick one
    id: str = Field(default_factory=lambda: uuid4().hex)

    # Same names as the CLI subcommands
    command: str

    # Same names as the CLI options, e.g. {"patterns": ["(ab)^2"], "ordered": false}
    arguments: dict[str, Any] = Field(default_factory=dict)


class JobQueryParams(BaseModel):
    id: str

    # False returns only the status (the result can be large for verify runs)
    include_result: bool = True
