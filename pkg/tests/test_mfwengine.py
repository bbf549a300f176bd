import pytest
from pydantic import ValidationError

from engines.matcore import build_identity_concat
from engines.mfwengine import (
    chi_family,
    dmfw,
    family_from_sequences,
    is_row_symmetric,
    mfw,
    pair_lower_bound_formation,
    pair_matrix_family,
    validate_matrix_answer,
    verify_pair_lower_bound,
)
from models.answer import WidthKind
from models.formation import BinaryPattern
from models.matrix import MatrixFamily
from utilities.errors import InvalidPatternError
from utilities.parsing import parse_matrix, parse_sequence


def test_mfw_pair():
    family = pair_matrix_family(2, 2)
    answer = mfw(family)
    assert answer.kind is WidthKind.MFW
    assert answer.width == 3
    assert answer.host_size == 2
    assert answer.cross_checked
    assert str(answer.avoider) == "AD"
    assert answer.symmetric
    assert validate_matrix_answer(family, answer)


def test_mfw_pair_k3():
    answer = mfw(pair_matrix_family(3, 2))
    assert answer.width == 3


def test_mfw_of_sequence_image():
    family = family_from_sequences([parse_sequence("1 2 1")])
    answer = mfw(family)
    assert answer.width == 3
    assert not answer.symmetric
    assert str(answer.avoider) == "DA"
    assert chi_family(family).tuples() == ((1, 2, 1),)


def test_dmfw_reduces_fat_pair():
    answer = dmfw(pair_matrix_family(2, 2, fat_j=2))
    assert answer.kind is WidthKind.DMFW
    assert answer.width == 3


@pytest.mark.parametrize("literal, avoider", [("11;00", "A"), ("00;11", "A"), ("10;00;01", "D")])
def test_mfw_accepts_empty_rows(literal, avoider):
    family = MatrixFamily.of(parse_matrix(literal))
    answer = mfw(family)
    assert answer.width == 2
    assert answer.host_size == family.max_rows
    assert answer.cross_checked
    assert str(answer.avoider) == avoider
    assert validate_matrix_answer(family, answer)


def test_matrix_family_needs_one_per_column():
    with pytest.raises(ValidationError):
        MatrixFamily.of(parse_matrix("11;11"))


def test_validate_matrix_answer_rejects_tampering():
    family = pair_matrix_family(2, 2)
    answer = mfw(family)
    bad = answer.model_copy(update={"avoider": BinaryPattern.from_text("AA")})
    assert not validate_matrix_answer(family, bad)
    missing = answer.model_copy(update={"embeddings": dict(list(answer.embeddings.items())[1:])})
    assert not validate_matrix_answer(family, missing)


@pytest.mark.parametrize("k, t", [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)])
def test_pair_lower_bound(k, t):
    assert verify_pair_lower_bound(k, t)
    assert pair_lower_bound_formation(k, t).cols == k * 2 * (t - 1)


def test_pair_lower_bound_needs_real_pair():
    with pytest.raises(InvalidPatternError):
        verify_pair_lower_bound(1, 2)


def test_row_symmetry():
    assert is_row_symmetric(pair_matrix_family(2, 3))
    assert not is_row_symmetric(MatrixFamily.of(build_identity_concat(2, 2)))
