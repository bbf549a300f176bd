import pytest
from pydantic import ValidationError

from engines.oracle import (
    check_general_bound,
    ex,
    ex_matrix,
    ex_matrix_exhaustive,
    ex_sequence,
    linearity_probe,
)
from engines.seqcore import is_sparse
from models.extremal import ExtremalMode, ExtremalQuery, FormationFamily
from models.matrix import MatrixPatterns
from models.sequence import PatternFamily, Sequence
from tests.oracles import naive_contains
from utilities.config import Settings
from utilities.errors import GuardExceededError, InvalidPatternError
from utilities.parsing import parse_matrix

ZETA_22 = FormationFamily(r=2, s=2)
IDENTITY_2 = MatrixPatterns.of(parse_matrix("10;01"))


def naive_zeta_22(n: int) -> int:
    """Grow all 2-sparse sequences over 1..n that avoid abab and abba, one letter at a time."""
    def avoids(letters):
        return not naive_contains(letters, (1, 2, 1, 2)) and not naive_contains(letters, (1, 2, 2, 1))

    level = [()]
    best = 0
    while level:
        nxt = []
        for letters in level:
            for x in range(1, n + 1):
                if letters and letters[-1] == x:
                    continue
                grown = letters + (x,)
                if avoids(grown):
                    nxt.append(grown)
        if nxt:
            best = len(nxt[0])
        level = nxt
    return best


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zeta_22_matches_naive_search(n):
    result = ex_sequence(ExtremalQuery(target=ZETA_22, n=n))
    assert result.value == naive_zeta_22(n)
    assert is_sparse(result.witness, 2)
    assert naive_zeta_22(n) == len(result.witness)


def test_zeta_22_small_values():
    assert ex_sequence(ExtremalQuery(target=ZETA_22, n=1)).value == 1
    assert ex_sequence(ExtremalQuery(target=ZETA_22, n=2)).value == 3


def test_zero_letters():
    result = ex_sequence(ExtremalQuery(target=ZETA_22, n=0))
    assert result.value == 0
    assert result.witness is None


def test_mixed_distinct_counts_rejected():
    family = PatternFamily.of(Sequence.of(1, 2, 1), Sequence.of(1, 2, 3))
    with pytest.raises(InvalidPatternError):
        ex_sequence(ExtremalQuery(target=family, n=3))


def test_guards():
    with pytest.raises(GuardExceededError):
        ex_sequence(ExtremalQuery(target=ZETA_22, n=7))
    with pytest.raises(GuardExceededError):
        ex_matrix(ExtremalQuery(target=IDENTITY_2, n=6, mode=ExtremalMode.MATRIX))
    with pytest.raises(GuardExceededError):
        ex_matrix_exhaustive(IDENTITY_2, 5)


def test_length_guard():
    settings = Settings(length_guard=3)
    with pytest.raises(GuardExceededError):
        ex_sequence(ExtremalQuery(target=ZETA_22, n=3), settings)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identity_matrix_extremal(n):
    result = ex_matrix(ExtremalQuery(target=IDENTITY_2, n=n, mode=ExtremalMode.MATRIX))
    assert result.value == 2 * n - 1
    assert result.value == ex_matrix_exhaustive(IDENTITY_2, n).value
    assert result.witness.weight == result.value


def test_lambda_21():
    target = FormationFamily(r=2, s=1)
    result = ex(ExtremalQuery(target=target, n=3, mode=ExtremalMode.MATRIX))
    assert result.value == 3
    assert result.value == ex_matrix_exhaustive(target, 3).value


def test_query_mode_must_fit_target():
    with pytest.raises(ValidationError):
        ExtremalQuery(target=PatternFamily.of(Sequence.of(1, 2)), n=2, mode=ExtremalMode.MATRIX)
    with pytest.raises(ValidationError):
        ExtremalQuery(target=IDENTITY_2, n=2)


@pytest.mark.slow
def test_results_do_not_depend_on_worker_count():
    query = ExtremalQuery(target=ZETA_22, n=4)
    serial = ex_sequence(query, Settings())
    pooled = ex_sequence(query, Settings(parallel=2))
    assert serial == pooled

    matrix_query = ExtremalQuery(target=IDENTITY_2, n=4, mode=ExtremalMode.MATRIX)
    assert ex_matrix(matrix_query, Settings()) == ex_matrix(matrix_query, Settings(parallel=2))


def test_general_bound_for_alternation():
    report = check_general_bound(Sequence.of(1, 2, 1, 2), 3)
    assert (report.r, report.s) == (2, 3)
    assert report.lhs.value == 5
    assert report.holds


def test_general_bound_needs_letters():
    with pytest.raises(InvalidPatternError):
        check_general_bound(Sequence(), 3)


def test_linearity_values_for_identity():
    report = linearity_probe(IDENTITY_2, 3)
    assert [v.value for v in report.values] == [1, 3, 5]
    assert report.differences == [2, 2]
    assert report.monotone
    assert report.max_difference == 2
