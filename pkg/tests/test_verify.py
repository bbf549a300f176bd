import pytest

from engines.fwengine import fw, literal_check
from engines.verify import (
    CHECKS,
    R_STAR_FAILURES,
    VerifyParams,
    normalized_words,
    ranked_words,
    run_check,
    soundness_corpus,
    verify_all,
)
from models.sequence import PatternFamily
from utilities.config import Settings
from utilities.errors import InvalidPatternError

SMALL = VerifyParams(ks=[2], ts=[2], r=2, s=3, n=2, max_length=3)

FAST_CHECKS = [
    "ex-ordered-unordered",
    "fw-pair",
    "fw-alternation",
    "pair-upper-bound",
    "dfw-reduction",
    "dfw-doubled-pair",
    "dfw-direct",
    "es-lemma",
    "mfw-pair",
    "pair-lower-bound",
    "linearity-probe",
    "dmfw-red",
    "ordered-single-width",
    "general-bound",
]


def test_every_check_is_registered():
    assert set(FAST_CHECKS) | {"chi-correspondence", "binary-soundness"} == set(CHECKS)


@pytest.mark.parametrize("check_id", FAST_CHECKS)
def test_check_passes_at_small_parameters(check_id):
    outcomes = run_check(check_id, SMALL)
    assert outcomes
    for outcome in outcomes:
        assert outcome.check_id == check_id
        assert outcome.locus == CHECKS[check_id].locus
        assert outcome.passed, outcome


def test_es_lemma_holds_for_sequences_and_fails_ordered():
    outcomes = run_check("es-lemma")
    assert [o.parameters for o in outcomes] == [
        {"r": 2, "s": 2}, {"r": 2, "s": 3}, {"r": 3, "s": 2}, {"r": 3, "s": 2, "ordered": True},
    ]
    assert [o.computed for o in outcomes] == [True, True, True, False]
    assert all(o.passed for o in outcomes)
    assert "14400 formations" in outcomes[2].note
    assert "counterexample" in outcomes[3].note


def test_dfw_direct_threshold():
    rows = run_check("dfw-direct")
    assert [row.computed for row in rows] == [False, 4]


def test_unknown_check():
    with pytest.raises(InvalidPatternError):
        run_check("no-such-check")


def test_engine_errors_become_failed_rows():
    outcomes = run_check("es-lemma", SMALL, Settings(enumeration_cap=1))
    assert len(outcomes) == 1
    assert not outcomes[0].passed
    assert outcomes[0].computed.startswith("GuardExceededError")


def test_word_generators():
    assert list(ranked_words(2, 2)) == [(1, 1), (1, 2), (2, 1)]
    assert list(normalized_words(3, 2)) == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)]


@pytest.mark.slow
@pytest.mark.parametrize("check_id", ["chi-correspondence", "binary-soundness"])
def test_sweeps(check_id):
    assert all(outcome.passed for outcome in run_check(check_id))


@pytest.mark.slow
def test_verify_all_defaults():
    report = verify_all()
    assert report.overall, [c for c in report.checks if not c.passed]
    assert report.summary()["failed"] == 0


def test_soundness_corpus_covers_three_letter_families():
    corpus = soundness_corpus()
    assert len(corpus["unordered 3-letter singles"]) == 122
    assert sum(len(families) for families in corpus.values()) >= 200


@pytest.mark.parametrize("family", R_STAR_FAILURES)
def test_binary_width_is_not_literal_at_r_star(family):
    letters = tuple(int(x) for x in family.strip("{}").split())
    family = PatternFamily.of(letters)
    assert fw(family).width == 3
    assert not literal_check(family, 3, 3).holds
    assert not literal_check(family, 3, 2).holds


def test_ordered_single_width_default_reaches_length_five():
    assert VerifyParams().max_length == 5
    rows = run_check("ordered-single-width", VerifyParams(max_length=5))
    assert [row.parameters for row in rows][-1] == {"length": 5, "sequences": 541}
    assert all(row.passed for row in rows)
