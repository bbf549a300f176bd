# =============================================================================
# models/service.py
# =============================================================================
# Purpose:
# Discovery metadata served at GET /.well-known/formwidth.json.
#
# - ServiceCapabilities: what the server supports
# - ServiceOperation: one command a job may run
# - ServiceCard: identity, address, version, capabilities and operations
# =============================================================================

from pydantic import BaseModel


class ServiceCapabilities(BaseModel):
    # Jobs are computed synchronously inside the compute call
    streaming: bool = False

    # Whether `--parallel` style worker pools are used by the engines
    parallel: bool = False

    # Whether finished jobs can be fetched again with jobs/get
    jobHistory: bool = True


class ServiceOperation(BaseModel):
    # Command name as used by the CLI and by jobs/compute (e.g. "fw")
    id: str

    description: str | None = None

    # Example `arguments` objects for jobs/compute
    examples: list[dict] | None = None


class ServiceCard(BaseModel):
    name: str
    description: str
    url: str
    version: str
    capabilities: ServiceCapabilities
    operations: list[ServiceOperation]
