from itertools import product

import pytest

from engines.matcore import (
    binary_matrix_formation,
    build_identity_concat,
    chi,
    chi_inv,
    contains_matrix,
    contains_matrix_formation,
    find_matrix_embedding,
    find_matrix_formation,
    flip_rows,
    matrix_formation,
    red_matrix,
    reflect,
    replay_matrix_embedding,
)
from models.formation import BinaryPattern
from models.matrix import Matrix01
from models.sequence import Sequence
from tests.oracles import naive_matrix_contains
from utilities.errors import InvalidPatternError
from utilities.parsing import parse_matrix


def all_matrices(rows: int, cols: int):
    cells = [(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
    for bits in product((0, 1), repeat=len(cells)):
        yield Matrix01(rows=rows, cols=cols, ones=tuple(cell for cell, bit in zip(cells, bits) if bit))


def test_chi_puts_one_per_column():
    assert chi(Sequence.of(1, 2, 1)).to_lines() == ["101", "010"]


def test_chi_needs_consecutive_letters():
    with pytest.raises(InvalidPatternError):
        chi(Sequence.of(2, 3))


def test_chi_inv():
    assert chi_inv(parse_matrix("101;010")).letters == (1, 2, 1)
    with pytest.raises(InvalidPatternError):
        chi_inv(parse_matrix("11;01"))


def test_red_matrix_merges_runs():
    assert red_matrix(chi(Sequence.of(1, 1, 2, 2, 1))).to_lines() == ["101", "010"]


def test_identity_concat():
    assert build_identity_concat(2, 2).to_lines() == ["1010", "0101"]
    assert build_identity_concat(2, 2, reflected=True).to_lines() == ["0101", "1010"]
    assert build_identity_concat(2, 2, fat_j=2).to_lines() == ["11001100", "00110011"]
    with pytest.raises(InvalidPatternError):
        build_identity_concat(0, 2)


def test_matrix_formation_builders():
    assert matrix_formation(2, [(2, 1)]).to_lines() == ["01", "10"]
    assert binary_matrix_formation(2, BinaryPattern.from_text("AD")).to_lines() == ["1001", "0110"]
    with pytest.raises(InvalidPatternError):
        matrix_formation(2, [(1, 1)])


def test_reflections():
    m = chi(Sequence.of(1, 2))
    assert reflect(m).to_lines() == ["01", "10"]
    assert flip_rows(m).to_lines() == ["01", "10"]
    assert reflect(reflect(m)) == m


@pytest.mark.parametrize("pattern", ["10;01", "01;10", "11", "1;1", "110;001"])
def test_containment_matches_brute_force(pattern):
    p = parse_matrix(pattern)
    for host in all_matrices(3, 3):
        embedding = find_matrix_embedding(host, p)
        assert (embedding is not None) == naive_matrix_contains(host, p), host.to_lines()
        if embedding is not None:
            assert replay_matrix_embedding(host, p, embedding)


def test_pattern_larger_than_host():
    assert not contains_matrix(parse_matrix("10;01"), parse_matrix("100;010;001"))


def test_replay_rejects_bad_certificates():
    host = parse_matrix("100;010;001")
    pattern = parse_matrix("10;01")
    embedding = find_matrix_embedding(host, pattern)
    assert replay_matrix_embedding(host, pattern, embedding)
    swapped = embedding.model_copy(update={"rows": tuple(reversed(embedding.rows))})
    assert not replay_matrix_embedding(host, pattern, swapped)
    short = embedding.model_copy(update={"cols": embedding.cols[:1]})
    assert not replay_matrix_embedding(host, pattern, short)


def test_find_matrix_formation():
    host = binary_matrix_formation(2, BinaryPattern.from_text("AD"))
    assert find_matrix_formation(host, 2, 2) == (1, 2)
    assert find_matrix_formation(host, 2, 3) is None
    assert find_matrix_formation(host, 2, 0) == ()


def test_fat_matrix_formation():
    fat = binary_matrix_formation(2, BinaryPattern.from_text("AA"), fat_B=2)
    assert contains_matrix_formation(fat, 2, 2, fat_B=2)
    assert not contains_matrix_formation(fat, 2, 3, fat_B=2)

    thin = binary_matrix_formation(2, BinaryPattern.from_text("AD"))
    assert not contains_matrix_formation(thin, 2, 1, fat_B=2)
