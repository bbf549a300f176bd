import pytest
from pydantic import ValidationError

from utilities.config import EnumerationOrder, Settings, load_settings
from utilities.parallel import OrderedMapper, worker_pool


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("FORMWIDTH_GUARD", "FORMWIDTH_WIDTH_CEILING", "FORMWIDTH_SEQUENCE_N_GUARD",
                 "FORMWIDTH_MATRIX_N_GUARD", "FORMWIDTH_LENGTH_GUARD", "FORMWIDTH_PARALLEL"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    settings = load_settings()
    assert settings == Settings()
    assert settings.enumeration_cap == 10_000_000
    assert settings.parallel == 1
    assert settings.seed_order is EnumerationOrder.LEX


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("FORMWIDTH_GUARD", "500")
    monkeypatch.setenv("FORMWIDTH_MATRIX_N_GUARD", "3")
    settings = load_settings()
    assert settings.enumeration_cap == 500
    assert settings.matrix_n_guard == 3


def test_explicit_overrides_win(monkeypatch):
    monkeypatch.setenv("FORMWIDTH_GUARD", "500")
    settings = load_settings(enumeration_cap=42, parallel=None, seed_order=EnumerationOrder.REVLEX)
    assert settings.enumeration_cap == 42
    assert settings.parallel == 1
    assert settings.seed_order is EnumerationOrder.REVLEX


def test_bad_values_are_ignored(monkeypatch):
    monkeypatch.setenv("FORMWIDTH_PARALLEL", "many")
    assert load_settings().parallel == 1


def test_out_of_range_rejected():
    with pytest.raises(ValidationError):
        Settings(parallel=0)


def double(x: int) -> int:
    return 2 * x


def test_ordered_mapper_in_process():
    assert OrderedMapper()(double, range(5)) == [0, 2, 4, 6, 8]


@pytest.mark.slow
def test_worker_pool_keeps_order():
    with worker_pool(2) as mapper:
        assert mapper(double, range(20)) == [2 * x for x in range(20)]
