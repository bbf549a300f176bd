# =============================================================================
# engines/search.py
# =============================================================================
# Purpose:
# Level-by-level search over binary patterns, shared by the sequence (fw, dfw)
# and matrix (mfw, dmfw) engines.
#
# A binary pattern whose formation contains a family member keeps containing
# one after any extension (the shorter formation is a prefix of the longer
# one), so only avoiders are extended. The width is the first level at which
# no avoider is left.
#
# Every probe is an independent work item; a level is mapped in input order
# through an OrderedMapper, so results do not depend on the worker count.
# =============================================================================

import logging
from abc import ABC, abstractmethod
from typing import Callable

from pydantic import BaseModel, Field

from models.answer import Certificate
from models.formation import BinaryPattern, Block
from engines.formations import binary_patterns
from utilities.errors import CeilingExceededError, InconsistencyError
from utilities.config import Settings
from utilities.parallel import OrderedMapper, worker_pool

logger = logging.getLogger(__name__)

Blocks = tuple[Block, ...]


class Probe(ABC):
    """
    Tests one binary pattern against a family.

    Subclasses must be picklable (plain attributes only) so they can be sent
    to worker processes.
    """

    # r*, the number of letters (rows) of every probed formation
    host_size: int

    @abstractmethod
    def __call__(self, blocks: Blocks) -> Certificate | None:
        """Return the certificate of the first member contained in the formation, or None."""
        ...


class SearchOutcome(BaseModel):
    width: int
    avoider: BinaryPattern | None = None
    certificates: dict[str, Certificate] = Field(default_factory=dict)
    patterns_tested: int = 0


def _word(blocks: Blocks) -> str:
    return "".join(b.value for b in blocks)


def width_search(probe: Probe, ceiling: int, symmetric: bool = False,
                 mapper: Callable | None = None) -> SearchOutcome:
    """
    Find the least s such that every binary formation of length s contains a member.

    Args:
        probe: containment test for one pattern
        ceiling: largest s to try
        symmetric: the family is closed under swapping A and D, so only
            patterns starting with A are probed
        mapper: ordered map used for each level (in-process when None)

    Returns:
        SearchOutcome: width, the first avoider at width-1 (lexicographic,
        A < D) and one certificate per pattern of length width

    Raises:
        CeilingExceededError: when some pattern of length `ceiling` still avoids
    """
    mapper = mapper or OrderedMapper()
    contained: dict[Blocks, Certificate] = {}
    frontier: list[Blocks] = [()]
    previous_avoiders: list[Blocks] = []
    tested = 0

    for s in range(ceiling + 1):
        results = mapper(probe, frontier)
        tested += len(frontier)
        avoiders = []
        for blocks, certificate in zip(frontier, results):
            if certificate is None:
                avoiders.append(blocks)
            else:
                contained[blocks] = certificate
        logger.info(f"level s={s}: probed {len(frontier)}, avoiders {len(avoiders)}")

        if not avoiders:
            avoider = BinaryPattern(blocks=previous_avoiders[0]) if previous_avoiders else None
            certificates, extra = _collect_certificates(probe, s, contained, mapper)
            return SearchOutcome(
                width=s,
                avoider=avoider,
                certificates=certificates,
                patterns_tested=tested + extra,
            )

        previous_avoiders = avoiders
        frontier = []
        for blocks in avoiders:
            frontier.append(blocks + (Block.ASC,))
            if not (symmetric and not blocks):
                frontier.append(blocks + (Block.DESC,))

    raise CeilingExceededError(
        f"unresolved above ceiling: some binary formation of length {ceiling} "
        f"on {probe.host_size} letters still avoids the family (raise the ceiling to continue)"
    )


def _collect_certificates(probe: Probe, width: int, contained: dict[Blocks, Certificate],
                          mapper: Callable) -> tuple[dict[str, Certificate], int]:
    """
    One certificate per pattern of length `width`.

    A pattern reuses the certificate of its shortest probed prefix that
    contained a member (that prefix's formation is a prefix of its own);
    patterns without one, the mirrored half under symmetry pruning, are probed
    directly.
    """
    certificates: dict[str, Certificate] = {}
    missing: list[Blocks] = []
    for pattern in binary_patterns(width):
        blocks = pattern.blocks
        found = None
        for cut in range(width + 1):
            found = contained.get(blocks[:cut])
            if found is not None:
                break
        if found is None:
            missing.append(blocks)
        else:
            certificates[_word(blocks)] = found

    for blocks, certificate in zip(missing, mapper(probe, missing)):
        if certificate is None:
            raise InconsistencyError(
                f"pattern {_word(blocks) or '-'} avoids the family although its mirror image does not; "
                "the family is not closed under the assumed symmetry"
            )
        certificates[_word(blocks)] = certificate

    ordered = {_word(p.blocks): certificates[_word(p.blocks)] for p in binary_patterns(width)}
    return ordered, len(missing)


def run_width_search(probe: Probe, settings: Settings, symmetric: bool = False,
                     mapper: Callable | None = None) -> SearchOutcome:
    """width_search with the ceiling and worker count taken from settings."""
    if mapper is not None:
        return width_search(probe, settings.width_ceiling, symmetric, mapper)
    with worker_pool(settings.parallel) as pool_mapper:
        return width_search(probe, settings.width_ceiling, symmetric, pool_mapper)
