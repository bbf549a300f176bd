# =============================================================================
# engines/seqcore.py
# =============================================================================
# Purpose:
# Sequence primitives: canonical forms, sparsity, red(), and pattern
# containment with embedding certificates.
#
# Containment is a backtracking search over the injective letter map. A
# pattern letter that is already mapped always takes the leftmost usable
# occurrence of its host letter (any embedding can be shifted left onto it),
# so the only branching happens when a pattern letter is seen for the first
# time. Candidates are tried in order of their next occurrence, which makes
# the returned certificate deterministic.
#
# Ordered containment uses the same search with the extra constraint that the
# letter map is strictly increasing; that is the same as matching the rank
# normalized pattern, so callers never need to normalize first.
#
# Matrix rows add a spacing rule on top: a pattern read off a 0-1 matrix with
# empty rows still needs host rows in between, so mapped letters keep at least
# the pattern's row distance and stay inside the host height.
# =============================================================================

import logging
from bisect import bisect_left
from itertools import groupby
from typing import Iterable

from models.answer import Certificate, SequenceEmbedding
from models.sequence import PatternFamily, Sequence
from utilities.errors import InvalidPatternError

logger = logging.getLogger(__name__)

Letters = tuple[int, ...]


# -----------------------------------------------------------------------------
# Canonical forms and transforms
# -----------------------------------------------------------------------------

def normalize_letters(letters: Iterable[int]) -> Letters:
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(x, len(relabel) + 1) for x in letters)


def normalize(s: Sequence) -> Sequence:
    """Relabel letters to 1, 2, … in order of first occurrence."""
    return Sequence(letters=normalize_letters(s.letters))


def rank_letters(letters: Iterable[int]) -> Letters:
    letters = tuple(letters)
    ranks = {x: i for i, x in enumerate(sorted(set(letters)), start=1)}
    return tuple(ranks[x] for x in letters)


def rank_normalize(s: Sequence) -> Sequence:
    """Order-preserving relabel onto 1..||s||."""
    return Sequence(letters=rank_letters(s.letters))


def complement(s: Sequence) -> Sequence:
    """Letter reversal x -> m+1-x after rank compression (m = ||s||)."""
    ranked = rank_letters(s.letters)
    top = len(set(ranked)) + 1
    return Sequence(letters=tuple(top - x for x in ranked))


def restrict(s: Sequence, letters: Iterable[int]) -> Sequence:
    """Delete every occurrence of the letters outside `letters`."""
    keep = set(letters)
    return Sequence(letters=tuple(x for x in s.letters if x in keep))


def red_letters(letters: Iterable[int]) -> Letters:
    return tuple(x for x, _ in groupby(letters))


def red(s: Sequence) -> Sequence:
    """Collapse every maximal run of equal adjacent letters to one occurrence."""
    return Sequence(letters=red_letters(s.letters))


def is_sparse_letters(letters: Letters, window: int) -> bool:
    if window < 1:
        raise InvalidPatternError(f"sparsity window must be >= 1, got {window}")
    for i, x in enumerate(letters):
        if x in letters[max(0, i - window + 1):i]:
            return False
    return True


def is_sparse(s: Sequence, window: int) -> bool:
    """True iff every run of `window` consecutive entries is pairwise distinct."""
    return is_sparse_letters(s.letters, window)


# -----------------------------------------------------------------------------
# Containment
# -----------------------------------------------------------------------------

def embed_letters(host: Letters, pattern: Letters, ordered: bool = False,
                  heights: tuple[int, int] | None = None) -> SequenceEmbedding | None:
    """
    Find an embedding of `pattern` into `host`.

    Args:
        host: host letters
        pattern: pattern letters
        ordered: require a strictly increasing letter map
        heights: (pattern rows, host rows) when letters are matrix rows; the
            map then keeps every row gap of the pattern, empty rows included

    Returns:
        SequenceEmbedding | None: 1-indexed positions and the letter map, or
        None when the host avoids the pattern
    """
    if len(pattern) > len(host):
        return None
    if not pattern:
        return SequenceEmbedding(positions=(), letter_map={})

    occurrences: dict[int, list[int]] = {}
    for index, letter in enumerate(host):
        occurrences.setdefault(letter, []).append(index)

    need: dict[int, int] = {}
    for letter in pattern:
        need[letter] = need.get(letter, 0) + 1

    # Host letters frequent enough to stand in for some pattern letter
    host_letters = [h for h, occ in occurrences.items() if len(occ) >= min(need.values())]
    if not host_letters or len(need) > len(occurrences):
        return None

    mapping: dict[int, int] = {}
    used: set[int] = set()
    positions: list[int] = []
    m, n = len(pattern), len(host)

    def bounds(x: int) -> tuple[int, int]:
        lo, hi = 0, 1 << 62
        if heights is not None:
            lo, hi = x - 1, x + heights[1] - heights[0] + 1
        for y, h in mapping.items():
            gap = abs(x - y) if heights is not None else 1
            if y < x:
                lo = max(lo, h + gap - 1)
            elif y > x:
                hi = min(hi, h - gap + 1)
        return lo, hi

    def search(i: int, pos: int) -> bool:
        if i == m:
            return True
        if m - i > n - pos:
            return False
        x = pattern[i]
        h = mapping.get(x)
        if h is not None:
            occ = occurrences[h]
            k = bisect_left(occ, pos)
            if k == len(occ):
                return False
            positions.append(occ[k])
            if search(i + 1, occ[k] + 1):
                return True
            positions.pop()
            return False

        lo, hi = bounds(x) if ordered or heights is not None else (0, 1 << 62)
        candidates = []
        for h in host_letters:
            if h in used or not (lo < h < hi):
                continue
            occ = occurrences[h]
            k = bisect_left(occ, pos)
            if len(occ) - k >= need[x]:
                candidates.append((occ[k], h))
        candidates.sort()
        for first, h in candidates:
            mapping[x] = h
            used.add(h)
            positions.append(first)
            if search(i + 1, first + 1):
                return True
            positions.pop()
            used.discard(h)
            del mapping[x]
        return False

    if not search(0, 0):
        return None
    return SequenceEmbedding(
        positions=tuple(p + 1 for p in positions),
        letter_map={x: mapping[x] for x in sorted(mapping)},
    )


def find_embedding(host: Sequence, pattern: Sequence, ordered: bool = False) -> SequenceEmbedding | None:
    return embed_letters(host.letters, pattern.letters, ordered)


def contains_unordered(host: Sequence, pattern: Sequence) -> bool:
    """True iff some subsequence of host is isomorphic to pattern."""
    return embed_letters(host.letters, pattern.letters, ordered=False) is not None


def contains_ordered(host: Sequence, pattern: Sequence) -> bool:
    """True iff some subsequence of host is order-isomorphic to pattern."""
    return embed_letters(host.letters, pattern.letters, ordered=True) is not None


def contains(host: Sequence, pattern: Sequence, ordered: bool = False) -> bool:
    return embed_letters(host.letters, pattern.letters, ordered) is not None


def first_member_embedding(host: Letters, members: tuple[Letters, ...], ordered: bool) -> Certificate | None:
    """Certificate for the first family member (in family order) that embeds into host."""
    for index, member in enumerate(members):
        embedding = embed_letters(host, member, ordered)
        if embedding is not None:
            return Certificate(member=index, embedding=embedding)
    return None


def contains_family(host: Sequence, family: PatternFamily) -> Certificate | None:
    return first_member_embedding(host.letters, family.tuples(), family.ordered)


def replay_embedding(host: Sequence | Letters, pattern: Sequence | Letters,
                     embedding: SequenceEmbedding, ordered: bool = False) -> bool:
    """
    Check a certificate letter by letter, independently of the search.

    Positions must be strictly increasing and in range, the letter map
    injective (and strictly increasing when ordered), and host[position_k]
    must equal map[pattern_k] for every k.
    """
    host = host.letters if isinstance(host, Sequence) else tuple(host)
    pattern = pattern.letters if isinstance(pattern, Sequence) else tuple(pattern)
    positions, letter_map = embedding.positions, embedding.letter_map

    if len(positions) != len(pattern):
        return False
    if any(not (1 <= p <= len(host)) for p in positions):
        return False
    if any(a >= b for a, b in zip(positions, positions[1:])):
        return False
    if set(letter_map) != set(pattern):
        return False
    images = [letter_map[x] for x in sorted(letter_map)]
    if len(set(images)) != len(images):
        return False
    if ordered and any(a >= b for a, b in zip(images, images[1:])):
        return False
    return all(host[p - 1] == letter_map[x] for p, x in zip(positions, pattern))
