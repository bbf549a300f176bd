import pytest

from utilities.config import Settings


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def anyio_backend():
    return "asyncio"
