# =============================================================================
# server/job_manager.py
# =============================================================================
# 🎯 Purpose:
# How jobs are run and remembered by the JSON-RPC server.
#
# ✅ Includes:
# - JobManager, the abstract interface the server talks to
# - InMemoryJobManager, which runs each command through app.dispatch in a
#   worker thread and keeps every job in a dict
#
# ❌ Does not include:
# - Cancellation or streaming of partial results
# - Persistent storage (jobs are lost when the server stops)
# =============================================================================

import asyncio
import logging
from abc import ABC, abstractmethod

from starlette.concurrency import run_in_threadpool

from app.dispatch import dispatch
from models.job import Job, JobComputeParams, JobState, JobStatus
from models.json_rpc import ComputationError, InternalError, InvalidParamsError, JobNotFoundError
from models.report import ErrorReport
from models.request import ComputeJobRequest, ComputeJobResponse, GetJobRequest, GetJobResponse
from utilities.config import Settings
from utilities.errors import FormwidthError, InvalidPatternError, PatternParseError

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# 🧩 JobManager (abstract)
# -----------------------------------------------------------------------------

class JobManager(ABC):
    """Interface the server calls for each JSON-RPC method."""

    @abstractmethod
    async def on_compute_job(self, request: ComputeJobRequest) -> ComputeJobResponse:
        """Run a command and return the finished job (or a JSON-RPC error)."""
        pass

    @abstractmethod
    async def on_get_job(self, request: GetJobRequest) -> GetJobResponse:
        """Return a job previously computed by this manager."""
        pass


# -----------------------------------------------------------------------------
# 🧠 InMemoryJobManager
# -----------------------------------------------------------------------------

class InMemoryJobManager(JobManager):
    """
    Keeps jobs in memory and runs each computation off the event loop.

    A job id that is already known is not recomputed: the stored job is
    returned as it is.
    """

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or Settings()    # Guards, ceiling and workers for every job
        self.jobs: dict[str, Job] = {}             # 🗃️ job id -> latest Job
        self.lock = asyncio.Lock()                 # 🔐 One writer at a time on `jobs`

    # 💾 _register: store a new WORKING job, or return the known one
    async def _register(self, params: JobComputeParams) -> tuple[Job, bool]:
        async with self.lock:
            job = self.jobs.get(params.id)
            if job is not None:
                return job, False
            job = Job(
                id=params.id,
                command=params.command,
                arguments=params.arguments,
                status=JobStatus(state=JobState.WORKING),
            )
            self.jobs[params.id] = job
            return job, True

    # 🏁 _finish: replace the stored job with its final state
    async def _finish(self, job: Job, state: JobState, **fields) -> Job:
        async with self.lock:
            finished = job.model_copy(update={"status": JobStatus(state=state), **fields})
            self.jobs[job.id] = finished
            return finished

    # 📥 on_compute_job: run a command once per job id
    async def on_compute_job(self, request: ComputeJobRequest) -> ComputeJobResponse:
        params = request.params
        job, created = await self._register(params)
        if not created:
            logger.info(f"job {job.id} already known ({job.status.state.value})")
            return ComputeJobResponse(id=request.id, result=job)

        logger.info(f"job {job.id}: {params.command}")
        # Engines are synchronous: run them in a worker thread
        try:
            result = await run_in_threadpool(dispatch, params.command, params.arguments, self.settings)
        except FormwidthError as e:
            report = ErrorReport(
                command=params.command,
                error=type(e).__name__,
                message=str(e),
                position=e.position if isinstance(e, PatternParseError) else None,
            )
            await self._finish(job, JobState.FAILED, error=report)
            logger.warning(f"job {job.id} failed: {e}")
            error_type = InvalidParamsError if isinstance(e, (PatternParseError, InvalidPatternError)) \
                else ComputationError
            return ComputeJobResponse(
                id=request.id,
                error=error_type(message=str(e), data={"job": job.id, **report.model_dump(exclude_none=True)}),
            )
        except Exception as e:
            # Unexpected errors still leave the job FAILED, never WORKING
            report = ErrorReport(command=params.command, error=type(e).__name__, message=str(e))
            await self._finish(job, JobState.FAILED, error=report)
            logger.exception(f"job {job.id} crashed")
            return ComputeJobResponse(
                id=request.id,
                error=InternalError(message=str(e), data={"job": job.id, **report.model_dump(exclude_none=True)}),
            )

        finished = await self._finish(job, JobState.COMPLETED, result=result)
        return ComputeJobResponse(id=request.id, result=finished)

    # 📤 on_get_job: fetch a stored job
    async def on_get_job(self, request: GetJobRequest) -> GetJobResponse:
        query = request.params
        async with self.lock:
            job = self.jobs.get(query.id)
        if job is None:
            return GetJobResponse(id=request.id, error=JobNotFoundError(data={"job": query.id}))
        if not query.include_result:
            job = job.model_copy(update={"result": None})
        return GetJobResponse(id=request.id, result=job)
