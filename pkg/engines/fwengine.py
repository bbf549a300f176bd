# =============================================================================
# engines/fwengine.py
# =============================================================================
# Purpose:
# Formation width (fw) and doubled formation width (dfw) of sequence
# families, with certificates, plus the exhaustive checks that back the
# binary reduction.
#
# The host size is r* = the largest distinct-letter count among the members:
# deleting the letters of a binary formation that an embedding does not use
# leaves a binary formation with the same A/D word, so r* letters are enough
# and fewer can never be.
#
# Included:
# - fw / dfw                       width search over binary formations
# - literal_check / dfw_direct_check  the definition at a fixed r, s, j
# - es_gamma / check_es_lemma      Erdos-Szekeres reduction bound
# - avoidance_witness_pair         (AD)^(t-1), an avoider of the pair
# - validate_answer                replay every certificate of an FwAnswer
# =============================================================================

import logging
from typing import Callable

from engines.formations import (
    DEFAULT_CAP,
    binary_formation_letters,
    enumerate_fat_formations,
    enumerate_formations,
    find_binary_restriction,
)
from engines.search import Probe, run_width_search
from engines.seqcore import (
    complement,
    embed_letters,
    first_member_embedding,
    rank_normalize,
    red,
    replay_embedding,
)
from models.answer import (
    Certificate,
    DirectCheckResult,
    EsLemmaResult,
    FwAnswer,
    SequenceEmbedding,
    WidthKind,
)
from models.formation import BinaryPattern, Block
from models.sequence import PatternFamily, Sequence
from utilities.config import EnumerationOrder, Settings
from utilities.errors import GuardExceededError, InconsistencyError, InvalidPatternError

logger = logging.getLogger(__name__)

# es_gamma refuses results wider than this many bits
ES_GAMMA_MAX_BITS = 4096


# -----------------------------------------------------------------------------
# Probe
# -----------------------------------------------------------------------------

class SequenceProbe(Probe):
    """Does the binary formation on `host_size` letters contain a member?"""

    def __init__(self, members: tuple[tuple[int, ...], ...], ordered: bool, host_size: int):
        self.members = members
        self.ordered = ordered
        self.host_size = host_size

    def __call__(self, blocks: tuple[Block, ...]) -> Certificate | None:
        host = binary_formation_letters(self.host_size, blocks)
        return first_member_embedding(host, self.members, self.ordered)


def is_symmetric(family: PatternFamily) -> bool:
    """
    Whether swapping A and D maps avoiders to avoiders.

    The swap is the letter reversal x -> r+1-x, which unordered containment
    ignores. Ordered families qualify when the set of members is closed under
    complement (after rank normalization).
    """
    if not family.ordered:
        return True
    ranked = {rank_normalize(m).letters for m in family.members}
    flipped = {complement(m).letters for m in family.members}
    return ranked == flipped


# -----------------------------------------------------------------------------
# fw / dfw
# -----------------------------------------------------------------------------

def fw(family: PatternFamily, settings: Settings | None = None, host_size: int | None = None,
       mapper: Callable | None = None, kind: WidthKind = WidthKind.FW) -> FwAnswer:
    """
    Formation width of a family.

    Args:
        family: forbidden sequences with unordered or ordered semantics
        settings: ceiling on s and worker count (defaults when None)
        host_size: letters of the probed binary formations; defaults to r*
        mapper: ordered map to reuse instead of starting a pool
        kind: label reported in the answer

    Returns:
        FwAnswer: width, avoider at width-1 and a certificate per pattern at width

    Raises:
        CeilingExceededError: when no width up to the ceiling works
    """
    settings = settings or Settings()
    r_star = family.max_distinct
    if host_size is None:
        host_size = r_star
    elif host_size < r_star:
        raise InvalidPatternError(f"host size {host_size} is below r* = {r_star}")
    host_size = max(host_size, 1)

    symmetric = is_symmetric(family)
    logger.info(f"{kind.value} of {family}: r*={host_size}, symmetric={symmetric}")

    probe = SequenceProbe(family.tuples(), family.ordered, host_size)
    outcome = run_width_search(probe, settings, symmetric, mapper)
    return FwAnswer(
        kind=kind,
        width=outcome.width,
        host_size=host_size,
        avoider=outcome.avoider,
        embeddings=outcome.certificates,
        symmetric=symmetric,
        patterns_tested=outcome.patterns_tested,
    )


def reduced_family(family: PatternFamily) -> PatternFamily:
    return family.map(red)


def dfw(family: PatternFamily, settings: Settings | None = None,
        mapper: Callable | None = None) -> FwAnswer:
    """dfw(F) = fw(red(F)); certificates refer to the reduced members."""
    return fw(reduced_family(family), settings, mapper=mapper, kind=WidthKind.DFW)


# -----------------------------------------------------------------------------
# Literal definition at fixed parameters
# -----------------------------------------------------------------------------

def literal_check(family: PatternFamily, r: int, s: int, j: int = 1, cap: int = DEFAULT_CAP,
                  order: EnumerationOrder = EnumerationOrder.LEX) -> DirectCheckResult:
    """
    Does every j-tuple (r,s)-formation contain a member?

    j = 1 is the plain (r,s)-formation family. The first formation (in
    enumeration order) that avoids every member is returned as counterexample.
    """
    members = family.tuples()
    checked = 0
    for formation in enumerate_fat_formations(r, s, j, cap, order):
        checked += 1
        if first_member_embedding(formation.letters(), members, family.ordered) is None:
            return DirectCheckResult(holds=False, r=r, s=s, j=j, formations_checked=checked,
                                     counterexample=formation)
    return DirectCheckResult(holds=True, r=r, s=s, j=j, formations_checked=checked)


def dfw_direct_check(family: PatternFamily, r: int, s: int, j: int, cap: int = DEFAULT_CAP,
                     order: EnumerationOrder = EnumerationOrder.LEX) -> bool:
    """True iff every j-tuple (r,s)-formation contains some member."""
    return literal_check(family, r, s, j, cap, order).holds


# -----------------------------------------------------------------------------
# Erdos-Szekeres reduction
# -----------------------------------------------------------------------------

def _check_es_args(r: int, s: int) -> None:
    if r < 1 or s < 1:
        raise InvalidPatternError(f"need r >= 1 and s >= 1, got r={r}, s={s}")


def _bounded_power(base: int, exponent_log2: int) -> int:
    if base > 1 and (base.bit_length() - 1) * (1 << exponent_log2) > ES_GAMMA_MAX_BITS:
        raise GuardExceededError(
            f"{base}^(2^{exponent_log2}) has more than {ES_GAMMA_MAX_BITS} bits"
        )
    return base ** (1 << exponent_log2)


def es_gamma(r: int, s: int) -> int:
    """(r-1)^(2^(s-1)) + 1."""
    _check_es_args(r, s)
    return _bounded_power(r - 1, s - 1) + 1


def es_gamma_iterated(r: int, s: int) -> int:
    """(r-1)^(2^s) + 1, one Erdos-Szekeres step per block."""
    _check_es_args(r, s)
    return _bounded_power(r - 1, s) + 1


def check_es_lemma(r: int, s: int, cap: int = DEFAULT_CAP,
                   order: EnumerationOrder = EnumerationOrder.LEX,
                   gamma: int | None = None, ordered: bool = False) -> EsLemmaResult:
    """
    Does every (gamma, s)-formation contain a binary (r, s)-formation?

    gamma defaults to es_gamma(r, s). Unordered containment lets the binary
    formation be relabeled; ordered containment keeps the numeric order of
    the letters, which is the form 0-1 matrices need. The first formation
    without a binary restriction is returned as counterexample.
    """
    gamma = es_gamma(r, s) if gamma is None else gamma
    checked = 0
    for formation in enumerate_formations(gamma, s, cap, order):
        checked += 1
        if find_binary_restriction(formation, r, ordered) is None:
            logger.info(f"({gamma},{s})-formation {formation} has no binary ({r},{s}) restriction")
            return EsLemmaResult(holds=False, r=r, s=s, gamma=gamma, ordered=ordered,
                                 formations_checked=checked, counterexample=formation)
    return EsLemmaResult(holds=True, r=r, s=s, gamma=gamma, ordered=ordered, formations_checked=checked)


# -----------------------------------------------------------------------------
# The pair {(1..k)^t, (k..1)^t}
# -----------------------------------------------------------------------------

def pair_family(k: int, t: int, ordered: bool = True, j: int = 1) -> PatternFamily:
    """{(1..k)^t, (k..1)^t}, every letter repeated j times."""
    if k < 1 or t < 1 or j < 1:
        raise InvalidPatternError(f"need k, t, j >= 1, got k={k}, t={t}, j={j}")
    up = tuple(x for x in range(1, k + 1) for _ in range(j)) * t
    down = tuple(x for x in range(k, 0, -1) for _ in range(j)) * t
    return PatternFamily.of(up, down, ordered=ordered)


def avoidance_witness_pair(k: int, t: int, ordered: bool = True) -> BinaryPattern:
    """
    (AD)^(t-1): exactly t-1 Asc blocks among 2t-2, alternating. Greedy
    matching of (1..k)^t finishes at most one copy per Asc block, and of
    (k..1)^t at most one per Desc block, so its formation on k letters avoids
    both. Re-checked before it is returned.

    t-1 Asc blocks followed by t-1 Desc blocks is not a witness in general:
    1 2 1 2 2 1 2 1 contains (1 2)^3.
    """
    if k < 2:
        raise InvalidPatternError(f"k must be >= 2, got {k}")
    if t < 1:
        raise InvalidPatternError(f"t must be >= 1, got {t}")
    pattern = BinaryPattern(blocks=(Block.ASC, Block.DESC) * (t - 1))
    host = binary_formation_letters(k, pattern.blocks)
    if first_member_embedding(host, pair_family(k, t, ordered).tuples(), ordered) is not None:
        raise InconsistencyError(f"{pattern} on {k} letters contains a member of the pair")
    return pattern


# -----------------------------------------------------------------------------
# Certificate replay
# -----------------------------------------------------------------------------

def validate_answer(family: PatternFamily, answer: FwAnswer) -> bool:
    """
    Replay an FwAnswer against the family it was computed for (the reduced
    family for dfw): the avoider must avoid every member and every
    certificate must replay on its own binary formation.
    """
    r = answer.host_size
    if answer.width > 0:
        if answer.avoider is None or answer.avoider.length != answer.width - 1:
            return False
        host = binary_formation_letters(r, answer.avoider.blocks)
        if any(embed_letters(host, m, family.ordered) is not None for m in family.tuples()):
            return False

    if len(answer.embeddings) != 2 ** answer.width:
        return False
    for word, certificate in answer.embeddings.items():
        pattern = BinaryPattern.from_text(word)
        if pattern.length != answer.width or not isinstance(certificate.embedding, SequenceEmbedding):
            return False
        if not 0 <= certificate.member < len(family.members):
            return False
        host = binary_formation_letters(r, pattern.blocks)
        member = family.members[certificate.member]
        if not replay_embedding(host, member, certificate.embedding, family.ordered):
            return False
    return True

