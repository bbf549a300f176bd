import pytest

from engines.formations import binary_formation_letters, find_binary_restriction
from engines.fwengine import (
    avoidance_witness_pair,
    check_es_lemma,
    dfw,
    dfw_direct_check,
    es_gamma,
    es_gamma_iterated,
    fw,
    is_symmetric,
    literal_check,
    pair_family,
    reduced_family,
    validate_answer,
)
from engines.seqcore import first_member_embedding
from models.answer import WidthKind
from models.formation import BinaryPattern
from models.sequence import PatternFamily
from utilities.config import EnumerationOrder, Settings
from utilities.errors import CeilingExceededError, GuardExceededError, InvalidPatternError
from utilities.parsing import parse_sequence


@pytest.mark.parametrize("literal, width", [
    ("(ab)^2", 3),
    ("(ab)^3", 5),
    ("(abc)^2", 3),
    ("a", 1),
    ("aa", 2),
])
def test_fw_unordered(literal, width):
    family = PatternFamily.of(parse_sequence(literal))
    answer = fw(family)
    assert answer.width == width
    assert validate_answer(family, answer)
    assert len(answer.embeddings) == 2 ** width


@pytest.mark.parametrize("k, t", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_fw_pair(k, t):
    family = pair_family(k, t)
    answer = fw(family)
    assert answer.width == 2 * t - 1
    assert answer.host_size == k
    assert answer.symmetric
    assert validate_answer(family, answer)


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3])
def test_fw_pair_t4(k):
    assert fw(pair_family(k, 4)).width == 7


def test_fw_pair_avoider_is_the_first_avoider():
    answer = fw(pair_family(2, 2))
    assert str(answer.avoider) == "AD"
    assert answer.kind is WidthKind.FW


def test_fw_ordered_without_symmetry():
    family = PatternFamily.of((1, 2, 3), ordered=True)
    assert not is_symmetric(family)
    answer = fw(family)
    assert answer.width == 3
    assert str(answer.avoider) == "DD"
    assert validate_answer(family, answer)


def test_fw_host_size_below_r_star_is_rejected():
    with pytest.raises(InvalidPatternError):
        fw(pair_family(3, 2), host_size=2)


def test_fw_larger_host_size_gives_the_same_width():
    assert fw(pair_family(2, 2), host_size=4).width == 3


def test_fw_ceiling():
    with pytest.raises(CeilingExceededError):
        fw(PatternFamily.of(parse_sequence("(ab)^3")), Settings(width_ceiling=2))


def test_validate_answer_rejects_tampering():
    family = pair_family(2, 2)
    answer = fw(family)
    missing = answer.model_copy(update={"embeddings": dict(list(answer.embeddings.items())[1:])})
    assert not validate_answer(family, missing)
    wrong_avoider = answer.model_copy(update={"avoider": BinaryPattern.from_text("AA")})
    assert not validate_answer(family, wrong_avoider)


def test_dfw_is_fw_of_red():
    family = pair_family(2, 2, j=2)
    doubled = dfw(family)
    assert doubled.kind is WidthKind.DFW
    assert doubled.width == fw(reduced_family(family)).width == 3
    assert validate_answer(reduced_family(family), doubled)


def test_literal_check_counterexample_follows_enumeration_order():
    family = pair_family(2, 2)
    assert literal_check(family, 2, 3).holds
    lex = literal_check(family, 2, 2)
    assert not lex.holds
    assert str(lex.counterexample) == "1 2 | 2 1"
    assert lex.formations_checked == 2
    revlex = literal_check(family, 2, 2, order=EnumerationOrder.REVLEX)
    assert str(revlex.counterexample) == "2 1 | 1 2"


def test_dfw_direct_check_on_the_doubled_pair():
    family = pair_family(2, 2, j=2)
    assert not dfw_direct_check(family, 2, 2, 2)
    assert not dfw_direct_check(family, 2, 3, 2)
    assert dfw_direct_check(family, 2, 4, 2)


def test_es_gamma():
    assert es_gamma(3, 2) == 5
    assert es_gamma(2, 3) == 2
    assert es_gamma_iterated(3, 2) == 17
    with pytest.raises(GuardExceededError):
        es_gamma(50, 40)
    with pytest.raises(InvalidPatternError):
        es_gamma(0, 1)


def test_es_lemma_for_two_letters():
    result = check_es_lemma(2, 3)
    assert result.holds
    assert result.formations_checked == 8


def test_es_lemma_for_three_letters_two_blocks():
    result = check_es_lemma(3, 2)
    assert result.holds
    assert result.gamma == 5
    assert result.formations_checked == 14400


def test_es_lemma_ordered_needs_more_letters():
    result = check_es_lemma(3, 2, ordered=True)
    assert not result.holds
    assert result.ordered
    assert find_binary_restriction(result.counterexample, 3, ordered=True) is None
    assert find_binary_restriction(result.counterexample, 3) is not None


@pytest.mark.parametrize("k, t", [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)])
def test_avoidance_witness_pair(k, t):
    pattern = avoidance_witness_pair(k, t)
    assert str(pattern) == "AD" * (t - 1)
    assert pattern.ascents == pattern.descents == t - 1
    host = binary_formation_letters(k, pattern.blocks)
    assert first_member_embedding(host, pair_family(k, t).tuples(), True) is None


def test_ascents_then_descents_is_not_an_avoider():
    host = binary_formation_letters(2, BinaryPattern.from_text("AADD").blocks)
    assert first_member_embedding(host, pair_family(2, 3).tuples(), True) is not None


def test_pair_family_shape():
    family = pair_family(2, 2, j=2)
    assert family.tuples() == ((1, 1, 2, 2, 1, 1, 2, 2), (2, 2, 1, 1, 2, 2, 1, 1))
    with pytest.raises(InvalidPatternError):
        pair_family(0, 2)
