# =============================================================================
# client/client.py
# =============================================================================
# 📌 Purpose:
# Asynchronous Python client for the formwidth JSON-RPC server.
#
# It supports:
# - Running a command as a job (jobs/compute) and getting the finished job
# - Fetching a job again by id (jobs/get)
# - Reading the server's ServiceCard
# =============================================================================

import json
from typing import Any

import httpx

from models.job import Job, JobComputeParams, JobQueryParams
from models.json_rpc import JSONRPCError, JSONRPCRequest
from models.request import ComputeJobRequest, GetJobRequest
from models.service import ServiceCard


# -----------------------------------------------------------------------------
# ❌ Custom Error Classes
# -----------------------------------------------------------------------------

class FormwidthClientHTTPError(Exception):
    """Raised when the server answers with a 4xx/5xx status."""

    def __init__(self, status_code: int, message: str):
        self.status_code = status_code
        super().__init__(f"HTTP {status_code}: {message}")


class FormwidthClientJSONError(Exception):
    """Raised when the response body is not valid JSON."""
    pass


class FormwidthClientRPCError(Exception):
    """Raised when the server returns a JSON-RPC error object."""

    def __init__(self, error: JSONRPCError):
        self.error = error
        super().__init__(f"{error.code}: {error.message}")


# -----------------------------------------------------------------------------
# 🤝 FormwidthClient: talks to one server over httpx
# -----------------------------------------------------------------------------

class FormwidthClient:
    def __init__(self, service_card: ServiceCard | None = None, url: str | None = None,
                 transport: httpx.AsyncBaseTransport | None = None, timeout: float = 600):
        """
        Args:
            service_card: card of the server to talk to; its url is used
            url: server url, when no card is given
            transport: custom httpx transport (e.g. an ASGI app in tests)
            timeout: seconds to wait for a job to finish
        """
        if service_card:
            self.url = service_card.url
        elif url:
            self.url = url
        else:
            raise ValueError("Must provide either service_card or url")
        self.transport = transport
        self.timeout = timeout

    async def compute(self, command: str, arguments: dict[str, Any] | None = None,
                      job_id: str | None = None) -> Job:
        """Run `command` on the server and return the finished job."""
        params = JobComputeParams(command=command, arguments=arguments or {})
        if job_id is not None:
            params.id = job_id
        response = await self._send_request(ComputeJobRequest(params=params))
        return Job(**response["result"])

    async def get_job(self, job_id: str, include_result: bool = True) -> Job:
        request = GetJobRequest(params=JobQueryParams(id=job_id, include_result=include_result))
        response = await self._send_request(request)
        return Job(**response["result"])

    async def get_service_card(self) -> ServiceCard:
        async with self._client() as client:
            try:
                response = await client.get(self.url.rstrip("/") + "/.well-known/formwidth.json")
                response.raise_for_status()
                return ServiceCard(**response.json())
            except httpx.HTTPStatusError as e:
                raise FormwidthClientHTTPError(e.response.status_code, str(e)) from e
            except json.JSONDecodeError as e:
                raise FormwidthClientJSONError(str(e)) from e

    def _client(self) -> httpx.AsyncClient:
        return httpx.AsyncClient(transport=self.transport, timeout=self.timeout)

    async def _send_request(self, request: JSONRPCRequest) -> dict[str, Any]:
        async with self._client() as client:
            try:
                response = await client.post(self.url, json=request.model_dump(mode="json"))
                response.raise_for_status()
                body = response.json()
            except httpx.HTTPStatusError as e:
                raise FormwidthClientHTTPError(e.response.status_code, str(e)) from e
            except json.JSONDecodeError as e:
                raise FormwidthClientJSONError(str(e)) from e

        if body.get("error") is not None:
            raise FormwidthClientRPCError(JSONRPCError(**body["error"]))
        return body
