# =============================================================================
# engines/mfwengine.py
# =============================================================================
# Purpose:
# Matrix formation width (mfw) and its doubled variant (dmfw).
#
# Every mfw is computed twice: natively, by matrix containment in binary
# permutation matrix formations on r* = max member rows, and through chi_inv
# plus ordered sequence containment on the same host size, keeping each
# member's row spacing so empty rows count. The two answers must agree on
# width and avoider, otherwise InconsistencyError.
# =============================================================================

import logging
from typing import Callable

from engines.formations import binary_formation_letters
from engines.fwengine import avoidance_witness_pair
from engines.matcore import (
    binary_matrix_formation,
    build_identity_concat,
    chi,
    chi_inv,
    chi_letters,
    contains_matrix,
    find_matrix_embedding,
    flip_rows,
    red_matrix,
    replay_matrix_embedding,
)
from engines.search import Probe, run_width_search
from engines.seqcore import embed_letters, rank_normalize
from models.answer import Certificate, FwAnswer, MatrixEmbedding, WidthKind
from models.formation import BinaryPattern, Block
from models.matrix import Matrix01, MatrixFamily
from models.sequence import PatternFamily, Sequence
from utilities.config import Settings
from utilities.errors import InconsistencyError, InvalidPatternError
from utilities.parallel import worker_pool

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Probe
# -----------------------------------------------------------------------------

class MatrixProbe(Probe):
    """Does the binary permutation matrix formation on `host_size` rows contain a member?"""

    def __init__(self, members: tuple[Matrix01, ...], host_size: int):
        self.members = members
        self.host_size = host_size

    def __call__(self, blocks: tuple[Block, ...]) -> Certificate | None:
        host = chi_letters(binary_formation_letters(self.host_size, blocks), rows=self.host_size)
        for index, member in enumerate(self.members):
            embedding = find_matrix_embedding(host, member)
            if embedding is not None:
                return Certificate(member=index, embedding=embedding)
        return None


class ChiCheck(Probe):
    """The same question asked of chi_inv of every member, by ordered sequence containment."""

    def __init__(self, members: tuple[Matrix01, ...], host_size: int):
        self.members = tuple(chi_inv(m).letters for m in members)
        self.heights = tuple((m.rows, host_size) for m in members)
        self.host_size = host_size

    def __call__(self, blocks: tuple[Block, ...]) -> Certificate | None:
        host = binary_formation_letters(self.host_size, blocks)
        for index, (member, heights) in enumerate(zip(self.members, self.heights)):
            embedding = embed_letters(host, member, ordered=True, heights=heights)
            if embedding is not None:
                return Certificate(member=index, embedding=embedding)
        return None


def is_row_symmetric(family: MatrixFamily) -> bool:
    """Closed under reversing the row order (the matrix image of swapping A and D)."""
    members = {(m.rows, m.cols, m.ones) for m in family.members}
    flipped = {(f.rows, f.cols, f.ones) for f in (flip_rows(m) for m in family.members)}
    return members == flipped


# -----------------------------------------------------------------------------
# Families
# -----------------------------------------------------------------------------

def family_from_sequences(sequences: list[Sequence] | tuple[Sequence, ...]) -> MatrixFamily:
    """chi of every member after rank normalization."""
    return MatrixFamily(members=tuple(matrix_of_sequence(s) for s in sequences))


def matrix_of_sequence(s: Sequence) -> Matrix01:
    return chi(rank_normalize(s))


def pair_matrix_family(k: int, t: int, fat_j: int | None = None) -> MatrixFamily:
    """{A_{k,t}, B_{k,t}} (j-fat when fat_j is set)."""
    return MatrixFamily(members=(
        build_identity_concat(k, t, reflected=False, fat_j=fat_j),
        build_identity_concat(k, t, reflected=True, fat_j=fat_j),
    ))


def chi_family(family: MatrixFamily) -> PatternFamily:
    return PatternFamily.of(*(chi_inv(m) for m in family.members), ordered=True)


# -----------------------------------------------------------------------------
# mfw / dmfw
# -----------------------------------------------------------------------------

def mfw(family: MatrixFamily, settings: Settings | None = None, mapper: Callable | None = None,
        kind: WidthKind = WidthKind.MFW) -> FwAnswer:
    """
    Matrix formation width, cross-checked through the chi correspondence.

    Raises:
        CeilingExceededError: no width up to the ceiling
        InconsistencyError: the native and chi paths disagree
    """
    settings = settings or Settings()
    if mapper is None:
        with worker_pool(settings.parallel) as pool_mapper:
            return mfw(family, settings, pool_mapper, kind)

    r_star = max(family.max_rows, 1)
    symmetric = is_row_symmetric(family)
    logger.info(f"{kind.value}: {len(family.members)} members, r*={r_star}, symmetric={symmetric}")

    probe = MatrixProbe(family.members, r_star)
    outcome = run_width_search(probe, settings, symmetric, mapper)

    through_chi = run_width_search(ChiCheck(family.members, r_star), settings, symmetric, mapper)
    if through_chi.width != outcome.width or through_chi.avoider != outcome.avoider:
        raise InconsistencyError(
            f"native matrix search gives width {outcome.width} (avoider {outcome.avoider}) but the "
            f"chi path gives {through_chi.width} (avoider {through_chi.avoider})"
        )

    return FwAnswer(
        kind=kind,
        width=outcome.width,
        host_size=r_star,
        avoider=outcome.avoider,
        embeddings=outcome.certificates,
        symmetric=symmetric,
        patterns_tested=outcome.patterns_tested,
        cross_checked=True,
    )


def reduced_matrix_family(family: MatrixFamily) -> MatrixFamily:
    return MatrixFamily(members=tuple(red_matrix(m) for m in family.members))


def dmfw(family: MatrixFamily, settings: Settings | None = None,
         mapper: Callable | None = None) -> FwAnswer:
    """dmfw(F) = mfw(red(F)); certificates refer to the reduced members."""
    return mfw(reduced_matrix_family(family), settings, mapper, kind=WidthKind.DMFW)


# -----------------------------------------------------------------------------
# Lower-bound construction
# -----------------------------------------------------------------------------

def pair_lower_bound_formation(k: int, t: int) -> Matrix01:
    """t-1 identity blocks alternating with t-1 reflected ones, on k rows."""
    return binary_matrix_formation(k, avoidance_witness_pair(k, t))


def verify_pair_lower_bound(k: int, t: int) -> bool:
    """The formation above avoids both A_{k,t} and B_{k,t}."""
    if k < 2 or t < 2:
        raise InvalidPatternError(f"need k >= 2 and t >= 2, got k={k}, t={t}")
    host = pair_lower_bound_formation(k, t)
    return not any(contains_matrix(host, m) for m in pair_matrix_family(k, t).members)


# -----------------------------------------------------------------------------
# Certificate replay
# -----------------------------------------------------------------------------

def validate_matrix_answer(family: MatrixFamily, answer: FwAnswer) -> bool:
    """Replay the avoider and every row/column certificate of an mfw answer."""
    r = answer.host_size
    if answer.width > 0:
        if answer.avoider is None or answer.avoider.length != answer.width - 1:
            return False
        host = binary_matrix_formation(r, answer.avoider)
        if any(contains_matrix(host, m) for m in family.members):
            return False
    if len(answer.embeddings) != 2 ** answer.width:
        return False
    for word, certificate in answer.embeddings.items():
        pattern = BinaryPattern.from_text(word)
        if not isinstance(certificate.embedding, MatrixEmbedding):
            return False
        if not 0 <= certificate.member < len(family.members):
            return False
        host = binary_matrix_formation(r, pattern)
        if not replay_matrix_embedding(host, family.members[certificate.member], certificate.embedding):
            return False
    return True
