# =============================================================================
# server/server.py
# =============================================================================
# 📌 Purpose:
# A small JSON-RPC 2.0 server that exposes the formwidth commands to other
# programs.
#
# - POST /                            jobs/compute and jobs/get
# - GET  /.well-known/formwidth.json  the ServiceCard (name, operations, ...)
#
# NOTE: jobs are computed inside the jobs/compute call; there is no streaming
# and no push notification.
# =============================================================================


# -----------------------------------------------------------------------------
# 🧱 Required Imports
# -----------------------------------------------------------------------------

import json                                      # Detects bodies that are not JSON at all
import logging

# 🌐 Starlette serves the two routes; pydantic validates the JSON-RPC envelope
from pydantic import ValidationError
from starlette.applications import Starlette
from starlette.requests import Request
from starlette.responses import JSONResponse

# 📦 Project models and the shared command table
from app.dispatch import COMMANDS                # One service operation per CLI command
from models.json_rpc import (
    InternalError,
    InvalidRequestError,
    JSONRPCResponse,
    MethodNotFoundError,
)
from models.request import ComputeJobRequest, FormwidthRequest, GetJobRequest
from models.service import ServiceCapabilities, ServiceCard, ServiceOperation
from server.job_manager import JobManager
from utilities.config import Settings

logger = logging.getLogger(__name__)

VERSION = "0.1.0"

# Methods routed to the job manager; anything else is answered with -32601
_METHODS = ("jobs/compute", "jobs/get")

# Example arguments advertised on the service card
_OPERATION_EXAMPLES = {
    "fw": [{"patterns": ["(ab)^2"]}, {"pair": {"k": 2, "t": 2}, "certificate": True}],
    "dfw": [{"pair": {"k": 2, "t": 2}, "fat": 2}],
    "mfw": [{"pair": {"k": 2, "t": 2}}, {"matrices": ["1010;0101"]}],
    "dmfw": [{"pair": {"k": 2, "t": 2}, "fat": 2}],
    "contains": [{"host": "12323", "pattern": "121", "mode": "ordered"}],
    "red": [{"pattern": "1 1 2 2 1"}],
    "chi": [{"pattern": "1 2 1"}],
    "chi-inv": [{"pattern": "101;010"}],
    "formation": [{"r": 3, "s": 2, "binary": "AD"}],
    "extremal": [{"n": 3, "mode": "matrix", "pair": {"k": 2, "t": 2}}],
    "verify": [{"checks": ["fw-pair"], "params": {"ks": [2], "ts": [2]}}],
}


# -----------------------------------------------------------------------------
# 🪪 service_card(): what GET /.well-known/formwidth.json returns
# -----------------------------------------------------------------------------
def service_card(url: str, settings: Settings | None = None) -> ServiceCard:
    """Describe this server: one operation per dispatch command."""
    settings = settings or Settings()
    return ServiceCard(
        name="formwidth",
        description="Formation widths, containment and exact extremal functions of sequences and 0-1 matrices",
        url=url,
        version=VERSION,
        capabilities=ServiceCapabilities(parallel=settings.parallel > 1),
        operations=[
            ServiceOperation(
                id=name,
                description=(handler.__doc__ or "").strip() or None,   # First docstring of the handler
                examples=_OPERATION_EXAMPLES.get(name),
            )
            for name, handler in COMMANDS.items()
        ],
    )


# -----------------------------------------------------------------------------
# 🚀 FormwidthServer: routes requests to the job manager
# -----------------------------------------------------------------------------
class FormwidthServer:
    def __init__(self, host: str = "localhost", port: int = 10020, service_card: ServiceCard | None = None,
                 job_manager: JobManager | None = None):
        """
        Args:
            host: interface to bind
            port: port to listen on
            service_card: served on /.well-known/formwidth.json
            job_manager: runs and stores the jobs
        """
        self.host = host
        self.port = port
        self.service_card = service_card
        self.job_manager = job_manager

        # 🌐 Starlette app with the two routes
        self.app = Starlette()
        self.app.add_route("/", self._handle_request, methods=["POST"])
        self.app.add_route("/.well-known/formwidth.json", self._get_service_card, methods=["GET"])

    # -------------------------------------------------------------------------
    # ▶️ start(): run with uvicorn, blocks until interrupted
    # -------------------------------------------------------------------------
    def start(self):
        """Run the server with uvicorn; blocks until interrupted."""
        if not self.service_card or not self.job_manager:
            raise ValueError("Service card and job manager are required")

        # Only needed when the server actually runs
        import uvicorn
        uvicorn.run(self.app, host=self.host, port=self.port)

    # -------------------------------------------------------------------------
    # 🔎 _get_service_card(): GET /.well-known/formwidth.json
    # -------------------------------------------------------------------------
    def _get_service_card(self, request: Request) -> JSONResponse:
        return JSONResponse(self.service_card.model_dump(exclude_none=True))

    # -------------------------------------------------------------------------
    # 📥 _handle_request(): POST /
    # -------------------------------------------------------------------------
    async def _handle_request(self, request: Request) -> JSONResponse:
        """
        Parse one JSON-RPC request and hand it to the job manager.

        Malformed bodies and unknown methods are answered with status 400;
        computation errors are ordinary JSON-RPC error responses.
        """
        # Step 1: the body must be JSON
        try:
            body = await request.json()
        except json.JSONDecodeError as e:
            return self._error(InvalidRequestError(message=f"Body is not valid JSON: {e}"))

        # Step 2: the method must be one we serve
        request_id = body.get("id") if isinstance(body, dict) else None
        if not isinstance(body, dict) or body.get("method") not in _METHODS:
            method = body.get("method") if isinstance(body, dict) else None
            return self._error(MethodNotFoundError(data={"method": method}), request_id)

        # Step 3: validate the envelope through the discriminated union
        try:
            json_rpc = FormwidthRequest.validate_python(body)
        except ValidationError as e:
            return self._error(InvalidRequestError(data=e.errors(include_url=False, include_context=False)),
                               request_id)

        # Step 4: let the job manager answer
        try:
            if isinstance(json_rpc, ComputeJobRequest):
                result = await self.job_manager.on_compute_job(json_rpc)
            elif isinstance(json_rpc, GetJobRequest):
                result = await self.job_manager.on_get_job(json_rpc)
            else:
                raise ValueError(f"Unsupported method: {type(json_rpc)}")
        except Exception as e:
            logger.error(f"Exception while handling {body.get('method')}: {e}")
            return self._error(InternalError(message=str(e)), request_id, status_code=500)

        return self._create_response(result)

    # -------------------------------------------------------------------------
    # 🧾 Response helpers
    # -------------------------------------------------------------------------
    def _error(self, error, request_id=None, status_code: int = 400) -> JSONResponse:
        response = JSONRPCResponse(id=request_id, error=error)
        return JSONResponse(response.model_dump(mode="json", exclude_none=True), status_code=status_code)

    def _create_response(self, result: JSONRPCResponse) -> JSONResponse:
        if not isinstance(result, JSONRPCResponse):
            raise ValueError("Invalid response type")
        return JSONResponse(content=result.model_dump(mode="json", exclude_none=True))
