# =============================================================================
# engines/verify.py
# =============================================================================
# Purpose:
# A named suite of checks that replays the known results about formation
# widths and extremal functions at small parameters and reports, per check,
# what was expected, what was computed and whether the two agree.
#
# Each check is a generator of rows; the runner times every row, turns it
# into a CheckOutcome and converts engine errors into failed rows, so one
# broken check never hides the others.
# =============================================================================

import logging
import time
from itertools import product
from typing import Callable, Iterator, NamedTuple

from pydantic import BaseModel, Field

from engines.formations import binary_formation_letters, enumerate_formations, inflate
from engines.fwengine import (
    avoidance_witness_pair,
    check_es_lemma,
    dfw,
    fw,
    literal_check,
    pair_family,
    reduced_family,
    validate_answer,
)
from engines.matcore import chi_letters, contains_matrix
from engines.mfwengine import (
    dmfw,
    mfw,
    pair_matrix_family,
    reduced_matrix_family,
    validate_matrix_answer,
    verify_pair_lower_bound,
)
from engines.oracle import check_general_bound, ex_matrix_exhaustive, ex_sequence, linearity_probe
from engines.seqcore import embed_letters, first_member_embedding
from models.answer import EsLemmaResult
from models.extremal import ExtremalMode, ExtremalQuery, FormationFamily
from models.report import CheckOutcome, VerifyReport
from models.sequence import PatternFamily, Sequence
from utilities.config import Settings
from utilities.errors import FormwidthError, InvalidPatternError
from utilities.parallel import worker_pool

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Parameters and registry
# -----------------------------------------------------------------------------

class VerifyParams(BaseModel):
    """Knobs shared by the checks; every field has a desk-scale default."""

    # k (letters per block) and t (repetitions) for the pair checks
    ks: list[int] = Field(default_factory=lambda: [2, 3])
    ts: list[int] = Field(default_factory=lambda: [2, 3])

    # Single (r, s) for the formation checks; None runs the default list
    r: int | None = None
    s: int | None = None

    # Largest n for the extremal checks; None uses each check's own default
    n: int | None = None

    # Longest ordered sequence in the exhaustive width sweep
    max_length: int = Field(default=5, ge=1)

    # Host / pattern lengths of the chi sweep
    chi_host_length: int = Field(default=6, ge=1)
    chi_pattern_length: int = Field(default=4, ge=1)


class Row(NamedTuple):
    parameters: dict
    expected: object
    computed: object
    passed: bool
    note: str | None = None


CheckFn = Callable[[VerifyParams, Settings, Callable], Iterator[Row]]


class VerifyCheck(NamedTuple):
    locus: str
    fn: CheckFn


CHECKS: dict[str, VerifyCheck] = {}


def check(check_id: str, locus: str):
    """Register a check under `check_id`."""
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[check_id] = VerifyCheck(locus, fn)
        return fn
    return register


def _pairs(params: VerifyParams) -> Iterator[tuple[int, int]]:
    return product(params.ks, params.ts)


def _n_range(params: VerifyParams, default: int) -> range:
    return range(1, (params.n or default) + 1)


# -----------------------------------------------------------------------------
# Sequence formation widths
# -----------------------------------------------------------------------------

@check("ex-ordered-unordered", "ex_o(F_{r,s}, n) = ex_u(F_{r,s}, n) = zeta_{r,s}(n)")
def _ex_ordered_unordered(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    cases = [(params.r, params.s)] if params.r and params.s else [(2, 2), (2, 3)]
    for r, s in cases:
        # ordered avoidance of every (r,s)-formation listed explicitly
        explicit = PatternFamily.of(
            *(f.letters() for f in enumerate_formations(r, s, settings.enumeration_cap)), ordered=True
        )
        for n in _n_range(params, 3):
            zeta = ex_sequence(ExtremalQuery(target=FormationFamily(r=r, s=s), n=n), settings, mapper)
            ordered = ex_sequence(
                ExtremalQuery(target=explicit, n=n, mode=ExtremalMode.ORDERED), settings, mapper
            )
            yield Row({"r": r, "s": s, "n": n}, zeta.value, ordered.value, zeta.value == ordered.value)


@check("fw-pair", "fw({(1..k)^t, (k..1)^t}) = 2t-1")
def _fw_pair(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for k, t in _pairs(params):
        family = pair_family(k, t, ordered=True)
        answer = fw(family, settings, mapper=mapper)
        valid = validate_answer(family, answer)
        yield Row({"k": k, "t": t}, 2 * t - 1, answer.width,
                  answer.width == 2 * t - 1 and valid,
                  None if valid else "certificates failed to replay")


@check("fw-alternation", "fw((1 2 ... k)^t) = 2t-1 for unordered alternations")
def _fw_alternation(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for k, t in _pairs(params):
        family = PatternFamily.of(tuple(range(1, k + 1)) * t)
        answer = fw(family, settings, mapper=mapper)
        yield Row({"k": k, "t": t}, 2 * t - 1, answer.width,
                  answer.width == 2 * t - 1 and validate_answer(family, answer))


@check("pair-upper-bound", "every (k, 2t-1)-formation contains the pair, so ex_o(pair, n) <= zeta_{k,2t-1}(n)")
def _pair_upper_bound(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    k, t = params.ks[0], params.ts[0]
    family = pair_family(k, t, ordered=True)
    width = fw(family, settings, mapper=mapper).width
    literal = literal_check(family, k, width, cap=settings.enumeration_cap, order=settings.seed_order)
    yield Row({"k": k, "t": t, "s": width}, True, literal.holds, literal.holds,
              f"{literal.formations_checked} formations enumerated")
    for n in _n_range(params, 3):
        pair = ex_sequence(ExtremalQuery(target=family, n=n, mode=ExtremalMode.ORDERED), settings, mapper)
        zeta = ex_sequence(ExtremalQuery(target=FormationFamily(r=k, s=width), n=n), settings, mapper)
        yield Row({"k": k, "t": t, "n": n}, f"<= {zeta.value}", pair.value, pair.value <= zeta.value)


@check("dfw-reduction", "dfw(u) = fw(red(u))")
def _dfw_reduction(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    corpus = {
        "(1 1 2 2)^2": PatternFamily.of((1, 1, 2, 2, 1, 1, 2, 2)),
        "1 1 2 2 3 3 ordered": PatternFamily.of((1, 1, 2, 2, 3, 3), ordered=True),
        "doubled pair k=2 t=2": pair_family(2, 2, ordered=True, j=2),
    }
    for label, family in corpus.items():
        doubled = dfw(family, settings, mapper)
        plain = fw(reduced_family(family), settings, mapper=mapper)
        inflated_avoids = True
        if doubled.avoider is not None:
            host = inflate(doubled.avoider, doubled.host_size, 2).letters
            inflated_avoids = first_member_embedding(host, family.tuples(), family.ordered) is None
        yield Row({"family": label}, plain.width, doubled.width,
                  doubled.width == plain.width and inflated_avoids,
                  None if inflated_avoids else "doubled avoider contains a member")


@check("dfw-doubled-pair", "dfw({gamma_1, gamma_2}) = 2t-1 for the doubled pair")
def _dfw_doubled_pair(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for k, t in _pairs(params):
        family = pair_family(k, t, ordered=True, j=2)
        answer = dfw(family, settings, mapper)
        yield Row({"k": k, "t": t, "j": 2}, 2 * t - 1, answer.width,
                  answer.width == 2 * t - 1 and validate_answer(reduced_family(family), answer))


@check("dfw-direct", "j-tuple formations at r = r*: an avoider below dfw, containment from some s >= dfw")
def _dfw_direct(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    k, t, j = 2, 2, 2
    family = pair_family(k, t, ordered=True, j=j)
    width = dfw(family, settings, mapper).width
    below = literal_check(family, k, width - 1, j, settings.enumeration_cap, settings.seed_order)
    yield Row({"k": k, "t": t, "j": j, "s": width - 1}, False, below.holds, not below.holds)

    first = None
    for s in range(width, width + 3):
        if literal_check(family, k, s, j, settings.enumeration_cap, settings.seed_order).holds:
            first = s
            break
    yield Row({"k": k, "t": t, "j": j}, f">= {width}", first, first is not None and first >= width,
              "fat blocks range over all arrangements of j copies, so at r = r* the "
              "literal threshold may exceed dfw")


@check("es-lemma", "every ((r-1)^(2^(s-1))+1, s)-formation contains a binary (r,s)-formation")
def _es_lemma(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    cases = [(params.r, params.s)] if params.r and params.s else [(2, 2), (2, 3), (3, 2)]
    for r, s in cases:
        result = check_es_lemma(r, s, settings.enumeration_cap, settings.seed_order)
        yield Row({"r": r, "s": s}, True, result.holds, result.holds, _es_note(result))

    # numeric order cannot be relabeled away, so gamma letters are not enough
    if not (params.r and params.s):
        result = check_es_lemma(3, 2, settings.enumeration_cap, settings.seed_order, ordered=True)
        yield Row({"r": 3, "s": 2, "ordered": True}, False, result.holds, not result.holds,
                  _es_note(result))


def _es_note(result: EsLemmaResult) -> str:
    note = f"{result.formations_checked} formations, gamma={result.gamma}"
    if result.counterexample is not None:
        note += f"; counterexample {result.counterexample}"
    return note


# -----------------------------------------------------------------------------
# Matrix formation widths
# -----------------------------------------------------------------------------

@check("mfw-pair", "mfw({A_{k,t}, B_{k,t}}) = 2t-1")
def _mfw_pair(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for k, t in _pairs(params):
        family = pair_matrix_family(k, t)
        answer = mfw(family, settings, mapper)
        yield Row({"k": k, "t": t}, 2 * t - 1, answer.width,
                  answer.width == 2 * t - 1 and answer.cross_checked
                  and validate_matrix_answer(family, answer))


@check("pair-lower-bound", "(AD)^(t-1), with exactly t-1 ascending blocks, avoids both members of the pair")
def _pair_lower_bound(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for k in params.ks:
        for t in range(2, max(params.ts) + 2):
            pattern = avoidance_witness_pair(k, t)
            host = binary_formation_letters(k, pattern.blocks)
            sequences_ok = first_member_embedding(host, pair_family(k, t).tuples(), True) is None
            matrices_ok = verify_pair_lower_bound(k, t)
            yield Row({"k": k, "t": t, "avoider": str(pattern)}, True, sequences_ok and matrices_ok,
                      sequences_ok and matrices_ok)


@check("linearity-probe", "ex({A_{2,2}, B_{2,2}}, n) grows linearly")
def _linearity_probe(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    family = pair_matrix_family(2, 2)
    n_max = params.n or 4
    probe = linearity_probe(family, n_max, ExtremalMode.MATRIX, settings, mapper)
    values = [v.value for v in probe.values]
    # a single full row avoids every member with two rows
    yield Row({"n_max": n_max}, "monotone, value(n) >= n", values,
              probe.monotone and all(v >= n for n, v in enumerate(values, start=1)),
              f"max first difference {probe.max_difference}")
    for result in probe.values[:3]:
        naive = ex_matrix_exhaustive(family, result.n)
        yield Row({"n": result.n}, naive.value, result.value, naive.value == result.value,
                  "against the exhaustive search")


@check("dmfw-red", "dmfw(M) = mfw(red(M)) = 2t-1 for the 2-fat pair")
def _dmfw_red(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for k, t in _pairs(params):
        family = pair_matrix_family(k, t, fat_j=2)
        doubled = dmfw(family, settings, mapper)
        plain = mfw(reduced_matrix_family(family), settings, mapper)
        yield Row({"k": k, "t": t, "j": 2}, 2 * t - 1, doubled.width,
                  doubled.width == plain.width == 2 * t - 1)


# -----------------------------------------------------------------------------
# Sweeps
# -----------------------------------------------------------------------------

def ranked_words(length: int, max_letters: int) -> Iterator[tuple[int, ...]]:
    """Sequences of `length` whose letters are exactly 1..m for some m <= max_letters."""
    for letters in product(range(1, max_letters + 1), repeat=length):
        if set(letters) == set(range(1, max(letters) + 1)):
            yield letters


def normalized_words(length: int, max_letters: int) -> Iterator[tuple[int, ...]]:
    """Sequences in first-occurrence normal form over at most max_letters letters."""
    def extend(prefix: tuple[int, ...], top: int):
        if len(prefix) == length:
            yield prefix
            return
        for x in range(1, min(top + 1, max_letters) + 1):
            yield from extend(prefix + (x,), max(top, x))
    yield from extend((), 0)


@check("ordered-single-width", "fw(u) = |u| for every ordered u")
def _ordered_single_width(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for length in range(1, params.max_length + 1):
        words = list(ranked_words(length, length))
        mismatches = []
        for word in words:
            width = fw(PatternFamily.of(word, ordered=True), settings, mapper=mapper).width
            if width != length:
                mismatches.append((word, width))
        note = None
        if mismatches:
            word, width = mismatches[0]
            note = f"first mismatch: {Sequence(letters=word)} has width {width}"
        yield Row({"length": length, "sequences": len(words)}, 0, len(mismatches), not mismatches, note)


@check("general-bound", "ex_u(u, n) <= zeta_{||u||, |u|-||u||+1}(n)")
def _general_bound(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    for letters in [(1, 2), (1, 2, 1, 2), (1, 2, 3)]:
        u = Sequence(letters=letters)
        for n in _n_range(params, 3):
            result = check_general_bound(u, n, settings, mapper)
            yield Row({"u": str(u), "n": n}, f"<= {result.rhs.value}", result.lhs.value, result.holds)


@check("chi-correspondence", "a contains b (ordered) iff chi(a) contains chi(b)")
def _chi_correspondence(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    hosts = [w for n in range(1, params.chi_host_length + 1) for w in ranked_words(n, 3)]
    patterns = [w for n in range(1, params.chi_pattern_length + 1) for w in ranked_words(n, n)]
    host_matrices = {a: chi_letters(a) for a in hosts}
    pattern_matrices = {b: chi_letters(b) for b in patterns}
    mismatches = []
    for a in hosts:
        for b in patterns:
            as_sequences = embed_letters(a, b, ordered=True) is not None
            as_matrices = contains_matrix(host_matrices[a], pattern_matrices[b])
            if as_sequences != as_matrices:
                mismatches.append((a, b))
    note = f"first mismatch: host {mismatches[0][0]}, pattern {mismatches[0][1]}" if mismatches else None
    yield Row({"hosts": len(hosts), "patterns": len(patterns)}, 0, len(mismatches), not mismatches, note)


# unordered families whose binary width is right but where a non-binary
# (3, 3)-formation still avoids the member; containment needs more letters
R_STAR_FAILURES = ["{1 2 3 1 3 2}", "{1 2 3 2 1 3}", "{1 2 3 3 1 2}"]


def soundness_corpus() -> dict[str, list[PatternFamily]]:
    """Every family over at most 3 letters with members of length at most 6, grouped by shape."""
    two_letter = [w for n in range(1, 5) for w in normalized_words(n, 2)]
    return {
        "unordered singles": [PatternFamily.of(w) for n in range(1, 7) for w in normalized_words(n, 2)],
        "ordered singles": [PatternFamily.of(w, ordered=True)
                            for n in range(1, 7) for w in ranked_words(n, 2)],
        "unordered pairs": [PatternFamily.of(a, b)
                            for i, a in enumerate(two_letter) for b in two_letter[i + 1:]],
        "unordered 3-letter singles": [PatternFamily.of(w)
                                       for n in range(3, 7) for w in normalized_words(n, 3) if max(w) == 3],
        "ordered 3-letter singles": [PatternFamily.of(w, ordered=True)
                                     for n in (3, 4) for w in ranked_words(n, 3) if max(w) == 3],
    }


@check("binary-soundness", "at r = r*, every formation of length fw contains a member and one of length fw-1 avoids all")
def _binary_soundness(params: VerifyParams, settings: Settings, mapper: Callable) -> Iterator[Row]:
    unsettled: list[tuple[PatternFamily, int]] = []
    for label, families in soundness_corpus().items():
        failures = []
        for family in families:
            answer = fw(family, settings, mapper=mapper)
            r, s = answer.host_size, answer.width
            at_width = literal_check(family, r, s, cap=settings.enumeration_cap).holds
            below = s > 0 and literal_check(family, r, s - 1, cap=settings.enumeration_cap).holds
            if not at_width or below:
                failures.append(str(family))
            if not at_width:
                unsettled.append((family, s))
        expected = R_STAR_FAILURES if label == "unordered 3-letter singles" else []
        note = f"first failure: {failures[0]}" if failures else None
        yield Row({"corpus": label, "families": len(families)}, expected, failures, failures == expected, note)

    # `--r` above r* re-runs the failures with more letters
    for family, s in unsettled:
        if params.r and params.r > family.max_distinct:
            result = literal_check(family, params.r, s, cap=settings.enumeration_cap)
            note = None if result.holds else f"counterexample {result.counterexample}"
            yield Row({"family": str(family), "r": params.r, "s": s}, True, result.holds, result.holds, note)


# -----------------------------------------------------------------------------
# Runner
# -----------------------------------------------------------------------------

def run_check(check_id: str, params: VerifyParams | None = None, settings: Settings | None = None,
              mapper: Callable | None = None) -> list[CheckOutcome]:
    """
    Run one registered check.

    Raises:
        InvalidPatternError: unknown check id
    """
    if check_id not in CHECKS:
        raise InvalidPatternError(f"unknown check {check_id!r}; known checks: {', '.join(CHECKS)}")
    params = params or VerifyParams()
    settings = settings or Settings()
    if mapper is None:
        with worker_pool(settings.parallel) as pool_mapper:
            return run_check(check_id, params, settings, pool_mapper)

    locus, fn = CHECKS[check_id]
    logger.info(f"check {check_id}: {locus}")
    outcomes = []
    rows = fn(params, settings, mapper)
    started = time.perf_counter()
    while True:
        try:
            row = next(rows)
        except StopIteration:
            break
        except FormwidthError as e:
            logger.error(f"check {check_id} aborted: {e}")
            outcomes.append(CheckOutcome(
                check_id=check_id, locus=locus, passed=False,
                computed=f"{type(e).__name__}: {e}",
                elapsed_ms=(time.perf_counter() - started) * 1000,
            ))
            break
        outcomes.append(CheckOutcome(
            check_id=check_id, locus=locus, parameters=row.parameters,
            expected=row.expected, computed=row.computed, passed=row.passed, note=row.note,
            elapsed_ms=(time.perf_counter() - started) * 1000,
        ))
        if not row.passed:
            logger.warning(f"check {check_id} failed at {row.parameters}")
        started = time.perf_counter()
    return outcomes


def verify_all(params: VerifyParams | None = None, settings: Settings | None = None,
               check_ids: list[str] | None = None) -> VerifyReport:
    """Run the given checks (all registered ones by default) on a single worker pool."""
    settings = settings or Settings()
    report = VerifyReport()
    with worker_pool(settings.parallel) as mapper:
        for check_id in check_ids or list(CHECKS):
            report.checks.extend(run_check(check_id, params, settings, mapper))
    return report
