# =============================================================================
# utilities/config.py
# =============================================================================
# Purpose:
# Runtime settings (guards, ceilings, parallelism, enumeration order).
#
# Defaults live on the pydantic model. A `.env` file and FORMWIDTH_* variables
# can override them; explicit keyword overrides (CLI flags) win over both.
# Nothing here is required: with no environment at all the defaults apply.
# =============================================================================

import os
import logging
from enum import Enum

from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class EnumerationOrder(str, Enum):
    LEX = "lex"          # lexicographic over blocks, each block in lexicographic order
    REVLEX = "revlex"    # the same stream, reversed


class Settings(BaseModel):
    # Largest number of items any exhaustive enumeration may produce
    enumeration_cap: int = Field(default=10_000_000, ge=1)

    # Largest s the width search will try before giving up with an error
    width_ceiling: int = Field(default=64, ge=0)

    # Largest n accepted by the sequence / matrix extremal searches
    sequence_n_guard: int = Field(default=6, ge=1)
    matrix_n_guard: int = Field(default=5, ge=1)

    # Longest sequence the extremal search may build before it errors out
    length_guard: int = Field(default=64, ge=1)

    # Worker processes used by the engines (1 = run in-process)
    parallel: int = Field(default=1, ge=1)

    seed_order: EnumerationOrder = EnumerationOrder.LEX


# Environment variable → settings field
_ENV_FIELDS = {
    "FORMWIDTH_GUARD": "enumeration_cap",
    "FORMWIDTH_WIDTH_CEILING": "width_ceiling",
    "FORMWIDTH_SEQUENCE_N_GUARD": "sequence_n_guard",
    "FORMWIDTH_MATRIX_N_GUARD": "matrix_n_guard",
    "FORMWIDTH_LENGTH_GUARD": "length_guard",
    "FORMWIDTH_PARALLEL": "parallel",
}


def load_settings(**overrides) -> Settings:
    """
    Build the settings from defaults, the environment and explicit overrides.

    Args:
        **overrides: field values that take precedence; None values are ignored
            so click options left unset fall through to the environment.

    Returns:
        Settings: validated settings
    """
    load_dotenv()

    values: dict = {}
    for env_name, field in _ENV_FIELDS.items():
        raw = os.getenv(env_name)
        if raw is None or raw.strip() == "":
            continue
        try:
            values[field] = int(raw)
        except ValueError:
            logger.warning(f"Ignoring {env_name}={raw!r}: not an integer")

    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)
