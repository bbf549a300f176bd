# =============================================================================
# models/request.py
# =============================================================================
# Purpose:
# Request and response models of the formwidth JSON-RPC service.
#
# `FormwidthRequest` is a discriminated union that identifies and parses a
# request from its `method` field.
#
# Included Models:
# - ComputeJobRequest  ("jobs/compute")
# - GetJobRequest      ("jobs/get")
# - FormwidthRequest (discriminated union)
# - ComputeJobResponse / GetJobResponse
# =============================================================================

# -----------------------------------------------------------------------------
# Imports
# -----------------------------------------------------------------------------

from typing import Annotated, Union, Literal       # For type annotations and discriminator logic
from pydantic import Field                         # Field configurations
from pydantic.type_adapter import TypeAdapter      # Runtime discriminated union parsing

from models.json_rpc import JSONRPCRequest, JSONRPCResponse
from models.job import Job, JobComputeParams, JobQueryParams


# -----------------------------------------------------------------------------
# ComputeJobRequest: run a command and keep its result as a job
# -----------------------------------------------------------------------------

class ComputeJobRequest(JSONRPCRequest):
    method: Literal["jobs/compute"] = "jobs/compute"
    params: JobComputeParams


# -----------------------------------------------------------------------------
# GetJobRequest: fetch a job computed earlier
# -----------------------------------------------------------------------------

class GetJobRequest(JSONRPCRequest):
    method: Literal["jobs/get"] = "jobs/get"
    params: JobQueryParams


FormwidthRequest = TypeAdapter(
    Annotated[
        Union[
            ComputeJobRequest,
            GetJobRequest,
        ],
        Field(discriminator="method")
    ]
)


class ComputeJobResponse(JSONRPCResponse):
    result: Job | None = None


class GetJobResponse(JSONRPCResponse):
    result: Job | None = None
