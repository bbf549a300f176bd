# =============================================================================
# engines/formations.py
# =============================================================================
# Purpose:
# Builders and enumerators for (r,s)-formations, binary formations, j-fat
# permutations and j-tuple formations, plus formation containment tests.
#
# Enumeration order is lexicographic over blocks, each block in lexicographic
# permutation order; `EnumerationOrder.REVLEX` yields the same stream
# reversed. Every enumerator checks its closed-form count against the
# enumeration cap before yielding anything.
# =============================================================================

import logging
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterator

from models.formation import BinaryPattern, Block, FatFormation, Formation
from models.sequence import Sequence
from utilities.config import EnumerationOrder
from utilities.errors import GuardExceededError, InvalidPatternError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10_000_000

Letters = tuple[int, ...]


# -----------------------------------------------------------------------------
# Guards and counts
# -----------------------------------------------------------------------------

def check_guard(count: int, cap: int, what: str) -> None:
    """Raise GuardExceededError when `count` items would exceed `cap`."""
    if count > cap:
        logger.warning(f"Refusing to enumerate {count} {what} (cap {cap})")
        raise GuardExceededError(
            f"{what}: {count} items exceed the enumeration cap {cap} (raise it with --guard)"
        )


def count_formations(r: int, s: int) -> int:
    return factorial(r) ** s


def count_fat_blocks(r: int, j: int) -> int:
    """Multinomial (jr)! / (j!)^r."""
    return factorial(j * r) // factorial(j) ** r


def count_fat_formations(r: int, s: int, j: int) -> int:
    return count_fat_blocks(r, j) ** s


def _check_rs(r: int, s: int) -> None:
    if r < 1:
        raise InvalidPatternError(f"r must be >= 1, got {r}")
    if s < 0:
        raise InvalidPatternError(f"s must be >= 0, got {s}")


# -----------------------------------------------------------------------------
# Binary formations
# -----------------------------------------------------------------------------

def binary_patterns(s: int) -> Iterator[BinaryPattern]:
    """All 2^s binary patterns of length s, A before D at every position."""
    for blocks in product((Block.ASC, Block.DESC), repeat=s):
        yield BinaryPattern(blocks=blocks)


def binary_formation_letters(r: int, blocks: tuple[Block, ...]) -> Letters:
    ascending = tuple(range(1, r + 1))
    descending = ascending[::-1]
    out: list[int] = []
    for block in blocks:
        out.extend(ascending if block is Block.ASC else descending)
    return tuple(out)


def binary_formation(r: int, pattern: BinaryPattern) -> Sequence:
    """Asc blocks are 1 2 … r and Desc blocks are r … 2 1."""
    if r < 1:
        raise InvalidPatternError(f"r must be >= 1, got {r}")
    return Sequence(letters=binary_formation_letters(r, pattern.blocks))


def formation_of_pattern(r: int, pattern: BinaryPattern) -> Formation:
    ascending = tuple(range(1, r + 1))
    blocks = tuple(ascending if b is Block.ASC else ascending[::-1] for b in pattern.blocks)
    return Formation(r=r, s=pattern.length, blocks=blocks)


def inflate(pattern: BinaryPattern, r: int, j: int) -> Sequence:
    """j-fat inflation of a binary formation: every letter becomes j adjacent copies."""
    if j < 1:
        raise InvalidPatternError(f"j must be >= 1, got {j}")
    base = binary_formation(r, pattern)
    return Sequence(letters=tuple(x for x in base.letters for _ in range(j)))


# -----------------------------------------------------------------------------
# Enumeration
# -----------------------------------------------------------------------------

def enumerate_formations(r: int, s: int, cap: int = DEFAULT_CAP,
                         order: EnumerationOrder = EnumerationOrder.LEX) -> Iterator[Formation]:
    """
    Stream every (r,s)-formation exactly once.

    Raises:
        GuardExceededError: when (r!)^s > cap, before anything is produced
    """
    _check_rs(r, s)
    check_guard(count_formations(r, s), cap, f"({r},{s})-formations")
    blocks = list(permutations(range(1, r + 1)))
    if order is EnumerationOrder.REVLEX:
        blocks.reverse()
    return (Formation(r=r, s=s, blocks=chosen) for chosen in product(blocks, repeat=s))


def enumerate_fat_blocks(r: int, j: int) -> Iterator[Letters]:
    """Distinct arrangements of j copies of each of 1..r, in lexicographic order."""
    current = [letter for letter in range(1, r + 1) for _ in range(j)]
    while True:
        yield tuple(current)
        # next multiset permutation
        i = len(current) - 2
        while i >= 0 and current[i] >= current[i + 1]:
            i -= 1
        if i < 0:
            return
        k = len(current) - 1
        while current[k] <= current[i]:
            k -= 1
        current[i], current[k] = current[k], current[i]
        current[i + 1:] = reversed(current[i + 1:])


def enumerate_fat_formations(r: int, s: int, j: int, cap: int = DEFAULT_CAP,
                             order: EnumerationOrder = EnumerationOrder.LEX) -> Iterator[FatFormation]:
    """Stream every j-tuple (r,s)-formation exactly once (guard checked up front)."""
    _check_rs(r, s)
    if j < 1:
        raise InvalidPatternError(f"j must be >= 1, got {j}")
    check_guard(count_fat_formations(r, s, j), cap, f"{j}-tuple ({r},{s})-formations")
    blocks = list(enumerate_fat_blocks(r, j))
    if order is EnumerationOrder.REVLEX:
        blocks.reverse()
    return (FatFormation(r=r, s=s, j=j, blocks=chosen) for chosen in product(blocks, repeat=s))


# -----------------------------------------------------------------------------
# Containment of whole formation families
# -----------------------------------------------------------------------------

def _greedy_blocks(restricted: Letters, letters: Letters, j: int) -> int:
    """Number of consecutive segments in which every letter appears at least j times."""
    counts = dict.fromkeys(letters, 0)
    complete = 0
    blocks = 0
    for x in restricted:
        counts[x] += 1
        if counts[x] == j:
            complete += 1
            if complete == len(letters):
                blocks += 1
                counts = dict.fromkeys(letters, 0)
                complete = 0
    return blocks


def find_formation(host: Letters, r: int, s: int, j: int = 1) -> Letters | None:
    """
    Letters of some r-subset of the host that carries an (r,s)-formation
    (j-tuple formation when j > 1), or None when the host avoids them all.

    A block only has to contain each chosen letter j times in some order, so
    cutting the restricted host greedily at the earliest complete block is
    optimal.
    """
    _check_rs(r, s)
    if s == 0:
        return ()
    frequent = sorted(x for x in set(host) if host.count(x) >= j * s)
    for letters in combinations(frequent, r):
        chosen = set(letters)
        restricted = tuple(x for x in host if x in chosen)
        if _greedy_blocks(restricted, letters, j) >= s:
            return letters
    return None


def contains_formation(host: Sequence, r: int, s: int, fat_j: int | None = None) -> bool:
    """True iff host contains some (r,s)-formation (or fat_j-tuple formation)."""
    return find_formation(host.letters, r, s, fat_j or 1) is not None


# -----------------------------------------------------------------------------
# Binary restrictions of a formation
# -----------------------------------------------------------------------------

def find_binary_restriction(formation: Formation, r: int,
                            ordered: bool = False) -> tuple[Letters, BinaryPattern] | None:
    """
    An r-subset of the formation's letters on which it is a binary formation,
    with the binary pattern it spells, or None.

    Unordered, the letters are relabeled by their order in the first block and
    every later block must repeat that order or reverse it. Ordered, each
    block must be increasing or decreasing in numeric order. Each letter
    occurs exactly once per block in host and pattern alike, so an embedding
    of a binary (r,s)-formation uses exactly one block per block.
    """
    if r > formation.r:
        return None
    where = [{x: i for i, x in enumerate(block)} for block in formation.blocks]
    for subset in combinations(range(1, formation.r + 1), r):
        letters = subset
        if not ordered and where:
            letters = tuple(sorted(subset, key=where[0].__getitem__))
        pattern = []
        for index in where:
            spots = [index[x] for x in letters]
            if all(a < b for a, b in zip(spots, spots[1:])):
                pattern.append(Block.ASC)
            elif all(a > b for a, b in zip(spots, spots[1:])):
                pattern.append(Block.DESC)
            else:
                break
        else:
            return letters, BinaryPattern(blocks=tuple(pattern))
    return None


def restrict_formation(formation: Formation, letters: Letters) -> Formation:
    """Delete every letter outside `letters` and relabel the rest by rank."""
    ranks = {x: i for i, x in enumerate(sorted(letters), start=1)}
    blocks = tuple(tuple(ranks[x] for x in block if x in ranks) for block in formation.blocks)
    return Formation(r=len(ranks), s=formation.s, blocks=blocks)
