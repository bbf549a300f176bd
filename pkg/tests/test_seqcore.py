from itertools import product

import pytest

from engines.seqcore import (
    complement,
    contains,
    contains_family,
    contains_ordered,
    contains_unordered,
    embed_letters,
    find_embedding,
    is_sparse,
    normalize,
    rank_normalize,
    red,
    replay_embedding,
    restrict,
)
from models.sequence import PatternFamily, Sequence
from tests.oracles import naive_contains
from utilities.errors import InvalidPatternError


def seq(*letters: int) -> Sequence:
    return Sequence(letters=letters)


def test_normalize_relabels_by_first_occurrence():
    assert normalize(seq(5, 3, 5, 9)).letters == (1, 2, 1, 3)


def test_rank_normalize_keeps_letter_order():
    assert rank_normalize(seq(5, 3, 5, 9)).letters == (2, 1, 2, 3)


def test_complement_reverses_ranks():
    assert complement(seq(1, 3, 2)).letters == (3, 1, 2)
    assert complement(seq(10, 20)).letters == (2, 1)


def test_restrict_and_red():
    assert restrict(seq(1, 2, 3, 2, 1), {1, 3}).letters == (1, 3, 1)
    assert red(seq(1, 1, 2, 2, 2, 1, 3, 3)).letters == (1, 2, 1, 3)
    assert red(seq()).letters == ()


@pytest.mark.parametrize("letters, window, expected", [
    ((1, 2, 1, 2), 2, True),
    ((1, 2, 1, 2), 3, False),
    ((1, 1), 2, False),
    ((1, 2, 3), 5, True),
    ((), 3, True),
])
def test_is_sparse(letters, window, expected):
    assert is_sparse(seq(*letters), window) is expected


def test_is_sparse_rejects_empty_window():
    with pytest.raises(InvalidPatternError):
        is_sparse(seq(1, 2), 0)


def test_contains_examples():
    assert contains_ordered(seq(1, 2, 3, 2, 3), seq(1, 2, 1)) is True
    assert contains_unordered(seq(1, 2, 3, 2, 1), seq(1, 2, 1, 2)) is False
    assert contains_unordered(seq(2, 1, 2, 1), seq(1, 2, 1)) is True
    assert contains_ordered(seq(3, 2, 1), seq(1, 2)) is False
    assert contains_unordered(seq(3, 2, 1), seq(1, 2)) is True
    assert contains(seq(1, 2), seq()) is True


def test_embedding_is_a_valid_certificate():
    host, pattern = seq(3, 1, 2, 3, 1, 2), seq(1, 2, 1)
    embedding = find_embedding(host, pattern, ordered=True)
    assert embedding is not None
    assert replay_embedding(host, pattern, embedding, ordered=True)
    assert embedding.positions == (2, 3, 5)
    assert embedding.letter_map == {1: 1, 2: 2}


def test_replay_rejects_a_wrong_certificate():
    host, pattern = seq(1, 2, 1), seq(1, 2)
    embedding = find_embedding(host, pattern)
    broken = embedding.model_copy(update={"positions": (2, 1)})
    assert not replay_embedding(host, pattern, broken)
    swapped = embedding.model_copy(update={"letter_map": {1: 2, 2: 1}})
    assert not replay_embedding(host, pattern, swapped)


@pytest.mark.parametrize("ordered", [False, True])
def test_agrees_with_brute_force(ordered):
    hosts = [h for n in range(7) for h in product((1, 2, 3), repeat=n)]
    patterns = [p for n in range(1, 4) for p in product((1, 2, 3), repeat=n)]
    for host in hosts[::7]:
        for pattern in patterns:
            found = embed_letters(host, pattern, ordered)
            assert (found is not None) == naive_contains(host, pattern, ordered), (host, pattern)
            if found is not None:
                assert replay_embedding(host, pattern, found, ordered)


def test_contains_family_reports_first_member():
    family = PatternFamily.of((1, 2, 3), (1, 2, 1), ordered=True)
    certificate = contains_family(seq(2, 1, 2, 1), family)
    assert certificate is not None and certificate.member == 1
    assert contains_family(seq(3, 2, 1), family) is None


def test_row_heights_keep_pattern_gaps():
    # rows 1 and 3 of a three-row pattern need hosts rows two apart
    assert embed_letters((1, 2, 3), (1, 3), heights=(3, 3)).letter_map == {1: 1, 3: 3}
    assert embed_letters((2, 3, 1), (1, 3), heights=(3, 3)) is None
    assert embed_letters((1, 2, 3), (1, 2), ordered=True) is not None
    assert embed_letters((2, 3), (1, 2), heights=(3, 3)) is None
    # an empty last row must stay free below the mapped ones
    assert embed_letters((3, 3), (1, 1), heights=(2, 3)) is None
    assert embed_letters((2, 1, 2), (1, 1), heights=(2, 3)).letter_map == {1: 2}
