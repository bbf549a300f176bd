import pytest

from engines.formations import (
    binary_formation,
    binary_patterns,
    check_guard,
    contains_formation,
    count_fat_blocks,
    count_fat_formations,
    count_formations,
    enumerate_fat_blocks,
    enumerate_fat_formations,
    enumerate_formations,
    find_binary_restriction,
    find_formation,
    inflate,
    restrict_formation,
)
from models.formation import BinaryPattern, FatFormation, Formation
from models.sequence import Sequence
from utilities.config import EnumerationOrder
from utilities.errors import GuardExceededError, InvalidPatternError


def test_counts():
    assert count_formations(3, 2) == 36
    assert count_formations(5, 2) == 14400
    assert count_fat_blocks(2, 2) == 6
    assert count_fat_formations(2, 2, 2) == 36


def test_binary_patterns_put_ascending_first():
    assert [str(p) for p in binary_patterns(2)] == ["AA", "AD", "DA", "DD"]
    assert [str(p) for p in binary_patterns(0)] == [""]


def test_binary_formation_and_inflation():
    pattern = BinaryPattern.from_text("AD")
    assert binary_formation(3, pattern).letters == (1, 2, 3, 3, 2, 1)
    assert inflate(pattern, 2, 2).letters == (1, 1, 2, 2, 2, 2, 1, 1)


def test_enumeration_orders():
    lex = [str(f) for f in enumerate_formations(2, 2)]
    assert lex == ["1 2 | 1 2", "1 2 | 2 1", "2 1 | 1 2", "2 1 | 2 1"]
    revlex = [str(f) for f in enumerate_formations(2, 2, order=EnumerationOrder.REVLEX)]
    assert revlex == lex[::-1]


def test_enumeration_guard_fires_before_anything_is_produced():
    with pytest.raises(GuardExceededError):
        enumerate_formations(5, 2, cap=100)
    with pytest.raises(GuardExceededError):
        enumerate_fat_formations(2, 4, 2, cap=100)
    with pytest.raises(GuardExceededError):
        check_guard(11, 10, "things")


def test_invalid_parameters():
    with pytest.raises(InvalidPatternError):
        enumerate_formations(0, 2)
    with pytest.raises(InvalidPatternError):
        enumerate_fat_formations(2, 2, 0)


def test_fat_blocks_are_distinct_and_sorted():
    blocks = list(enumerate_fat_blocks(2, 2))
    assert blocks == [(1, 1, 2, 2), (1, 2, 1, 2), (1, 2, 2, 1), (2, 1, 1, 2), (2, 1, 2, 1), (2, 2, 1, 1)]
    assert len(list(enumerate_fat_blocks(3, 2))) == count_fat_blocks(3, 2)
    formations = list(enumerate_fat_formations(2, 1, 2))
    assert len(formations) == 6
    assert all(isinstance(f, FatFormation) and f.j == 2 for f in formations)


def test_find_formation():
    assert find_formation((1, 2, 3, 2, 1, 3), 2, 2) == (1, 2)
    assert find_formation((1, 2, 1), 2, 2) is None
    assert find_formation((1, 1, 2, 2, 2, 1, 2, 1), 2, 2, j=2) == (1, 2)
    assert find_formation((1, 2, 1, 2), 2, 2, j=2) is None
    assert find_formation((5,), 3, 0) == ()
    assert contains_formation(Sequence(letters=(1, 2, 3, 1, 2, 3)), 3, 2)
    assert not contains_formation(Sequence(letters=(1, 2, 3, 1, 2)), 3, 2)


def test_binary_restriction():
    plain = Formation(r=3, s=2, blocks=((1, 2, 3), (3, 2, 1)))
    letters, pattern = find_binary_restriction(plain, 3)
    assert letters == (1, 2, 3) and str(pattern) == "AD"

    # no three letters are monotone in both blocks, but 4 3 5 | 5 3 4 relabels to AD
    stubborn = Formation(r=5, s=2, blocks=((2, 1, 4, 3, 5), (1, 2, 5, 3, 4)))
    assert find_binary_restriction(stubborn, 3, ordered=True) is None
    letters, pattern = find_binary_restriction(stubborn, 3)
    assert letters == (4, 3, 5) and str(pattern) == "AD"
    assert find_binary_restriction(stubborn, 2, ordered=True) is not None
    assert find_binary_restriction(plain, 4) is None


def test_binary_restriction_relabels_by_first_block():
    formation = Formation(r=3, s=3, blocks=((2, 3, 1), (1, 3, 2), (2, 3, 1)))
    letters, pattern = find_binary_restriction(formation, 3)
    assert letters == (2, 3, 1) and str(pattern) == "ADA"
    assert find_binary_restriction(formation, 3, ordered=True) is None


def test_restrict_formation():
    formation = Formation(r=5, s=2, blocks=((2, 1, 4, 3, 5), (1, 2, 5, 3, 4)))
    restricted = restrict_formation(formation, (1, 3, 5))
    assert restricted.blocks == ((1, 2, 3), (1, 3, 2))


def test_formation_model_validates_blocks():
    with pytest.raises(ValueError):
        Formation(r=2, s=1, blocks=((1, 1),))
    with pytest.raises(ValueError):
        FatFormation(r=2, s=1, j=2, blocks=((1, 2, 2, 2),))
