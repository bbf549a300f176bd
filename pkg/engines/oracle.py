# =============================================================================
# engines/oracle.py
# =============================================================================
# Purpose:
# Exact extremal functions at desk scale, used as ground truth:
#
# - ex_sequence: ex_u / ex_o (and zeta, Phi for formation-family targets),
#   depth-first extension of sparse avoiding sequences
# - ex_matrix: ex (and lambda, Gamma), branch-and-bound over n x n cells
# - ex_matrix_exhaustive: all 2^(n*n) matrices, for cross-checking
# - check_general_bound / linearity_probe: reports built on top
#
# Both searches split into a fixed list of subtrees (sequence prefixes of
# length 2; the first four matrix cells after a greedy incumbent) that are
# mapped in order and combined with "strictly better wins", so value, witness
# and node count are the same for every worker count. The reported witness is
# the first maximum in search order: lexicographically least for sequences,
# ones-before-zeros row-major for matrices. Every witness is re-checked
# independently before it is returned.
# =============================================================================

import logging
from itertools import product
from typing import Callable

from engines.formations import find_formation
from engines.matcore import contains_matrix, find_matrix_formation
from engines.seqcore import first_member_embedding, is_sparse_letters
from models.extremal import (
    ExtremalMode,
    ExtremalQuery,
    ExtremalResult,
    FormationFamily,
    GeneralBoundResult,
    LinearityProbe,
)
from models.matrix import Matrix01, MatrixPatterns
from models.sequence import PatternFamily, Sequence
from utilities.config import Settings
from utilities.errors import GuardExceededError, InconsistencyError, InvalidPatternError
from utilities.parallel import worker_pool

logger = logging.getLogger(__name__)

SEQUENCE_SPLIT_DEPTH = 2
MATRIX_SPLIT_CELLS = 4
EXHAUSTIVE_MAX_N = 4

Letters = tuple[int, ...]


# -----------------------------------------------------------------------------
# Avoidance tests (picklable)
# -----------------------------------------------------------------------------

class SequenceAvoidance:
    """Does a sequence avoid the target? Formation targets ignore letter order."""

    def __init__(self, target: PatternFamily | FormationFamily, ordered: bool):
        if isinstance(target, FormationFamily):
            self.members = None
            self.formation = (target.r, target.s, target.j)
            self.window = target.r
        else:
            self.members = target.tuples()
            self.formation = None
            self.window = target.shared_distinct()
            if self.window < 1:
                raise InvalidPatternError("extremal queries need members with at least one letter")
        self.ordered = ordered

    def __call__(self, letters: Letters) -> bool:
        if self.formation is not None:
            r, s, j = self.formation
            return find_formation(letters, r, s, j) is None
        return first_member_embedding(letters, self.members, self.ordered) is None


class MatrixAvoidance:
    def __init__(self, target: MatrixPatterns | FormationFamily):
        if isinstance(target, FormationFamily):
            self.members = None
            self.formation = (target.r, target.s, target.j)
        else:
            if any(member.weight == 0 for member in target.members):
                raise InvalidPatternError("matrix patterns without ones are contained in every large enough matrix")
            self.members = target.members
            self.formation = None

    def __call__(self, matrix: Matrix01) -> bool:
        if self.formation is not None:
            r, s, fat = self.formation
            return find_matrix_formation(matrix, r, s, fat) is None
        return not any(contains_matrix(matrix, member) for member in self.members)


# -----------------------------------------------------------------------------
# Sequence search
# -----------------------------------------------------------------------------

class SequenceSubtree:
    """Exhaustive search below one fixed prefix; returns (best length, best sequence, nodes)."""

    def __init__(self, avoids: SequenceAvoidance, n: int, ordered: bool, length_guard: int):
        self.avoids = avoids
        self.n = n
        self.ordered = ordered
        self.length_guard = length_guard

    def children(self, letters: list[int]) -> list[int]:
        """Sparse one-letter extensions, smallest letter first."""
        top = self.n if self.ordered else min(self.n, max(letters, default=0) + 1)
        recent = letters[max(0, len(letters) - self.avoids.window + 1):] if self.avoids.window > 1 else []
        return [x for x in range(1, top + 1) if x not in recent]

    def __call__(self, prefix: Letters) -> tuple[int, Letters, int]:
        best_len, best = len(prefix), prefix
        nodes = 0
        letters = list(prefix)

        def visit():
            nonlocal best_len, best, nodes
            for x in self.children(letters):
                letters.append(x)
                if self.avoids(tuple(letters)):
                    nodes += 1
                    if len(letters) > self.length_guard:
                        raise GuardExceededError(
                            f"avoiding sequence longer than the length guard {self.length_guard}"
                        )
                    if len(letters) > best_len:
                        best_len, best = len(letters), tuple(letters)
                    visit()
                letters.pop()

        visit()
        return best_len, best, nodes


def _check_sequence_query(q: ExtremalQuery, settings: Settings) -> None:
    if q.is_matrix:
        raise InvalidPatternError("ex_sequence needs an unordered or ordered query")
    if q.n > settings.sequence_n_guard:
        raise GuardExceededError(f"n={q.n} exceeds the sequence guard {settings.sequence_n_guard}")


def ex_sequence(q: ExtremalQuery, settings: Settings | None = None,
                mapper: Callable | None = None) -> ExtremalResult:
    """
    Longest sequence over at most n letters that is w-sparse and avoids the
    target (w = ||v|| of the members, or r for formation families).

    Raises:
        GuardExceededError: n or the length guard exceeded
        InvalidPatternError: members with different ||v||
    """
    settings = settings or Settings()
    _check_sequence_query(q, settings)
    if mapper is None:
        with worker_pool(settings.parallel) as pool_mapper:
            return ex_sequence(q, settings, pool_mapper)

    avoids = SequenceAvoidance(q.target, q.ordered)
    subtree = SequenceSubtree(avoids, q.n, q.ordered, settings.length_guard)

    # Preorder over the shallow part of the tree; deeper parts become tasks
    tasks: list[Letters] = []
    order: list[tuple[str, Letters]] = []

    def expand(prefix: Letters):
        order.append(("node", prefix))
        if len(prefix) == SEQUENCE_SPLIT_DEPTH:
            order.append(("task", prefix))
            tasks.append(prefix)
            return
        for x in subtree.children(list(prefix)):
            child = prefix + (x,)
            if avoids(child):
                expand(child)

    if avoids(()):
        expand(())

    results = dict(zip(tasks, mapper(subtree, tasks)))
    best_len, best, nodes = -1, None, 0
    for kind, prefix in order:
        if kind == "node":
            nodes += 1
            if len(prefix) > best_len:
                best_len, best = len(prefix), prefix
        else:
            length, letters, below = results[prefix]
            nodes += below
            if length > best_len:
                best_len, best = length, letters

    if best is None:
        # even the empty sequence contains a member
        return ExtremalResult(n=q.n, value=0, witness=None, nodes_explored=0)

    _recheck_sequence(avoids, best, best_len, q.n)
    logger.info(f"ex_sequence n={q.n}: value {best_len}, {nodes} nodes")
    return ExtremalResult(
        n=q.n, value=best_len,
        witness=Sequence(letters=best) if best else None,
        nodes_explored=nodes,
    )


def _recheck_sequence(avoids: SequenceAvoidance, letters: Letters, value: int, n: int) -> None:
    if len(letters) != value:
        raise InconsistencyError(f"witness length {len(letters)} differs from value {value}")
    if any(not 1 <= x <= n for x in letters):
        raise InconsistencyError(f"witness uses letters outside 1..{n}")
    if not is_sparse_letters(letters, avoids.window):
        raise InconsistencyError(f"witness {letters} is not {avoids.window}-sparse")
    if not avoids(letters):
        raise InconsistencyError(f"witness {letters} contains the target")


# -----------------------------------------------------------------------------
# Matrix search
# -----------------------------------------------------------------------------

def _cells(n: int) -> list[tuple[int, int]]:
    return [(row, col) for row in range(1, n + 1) for col in range(1, n + 1)]


def _matrix(n: int, ones: list[tuple[int, int]] | tuple[tuple[int, int], ...]) -> Matrix01:
    return Matrix01(rows=n, cols=n, ones=tuple(ones))


class MatrixSubtree:
    """
    Branch-and-bound below a fixed assignment of the first cells. Only leaves
    strictly better than `incumbent` are reported.
    """

    def __init__(self, avoids: MatrixAvoidance, n: int, incumbent: int):
        self.avoids = avoids
        self.n = n
        self.incumbent = incumbent

    def __call__(self, prefix: tuple[bool, ...]) -> tuple[int, tuple | None, int]:
        cells = _cells(self.n)
        ones = [cell for cell, bit in zip(cells, prefix) if bit]
        best_value, best = self.incumbent, None
        nodes = 0

        def visit(index: int):
            nonlocal best_value, best, nodes
            nodes += 1
            if index == len(cells):
                if len(ones) > best_value:
                    best_value, best = len(ones), tuple(ones)
                return
            if len(ones) + len(cells) - index <= best_value:
                return
            ones.append(cells[index])
            if self.avoids(_matrix(self.n, ones)):
                visit(index + 1)
            ones.pop()
            visit(index + 1)

        visit(len(prefix))
        return best_value, best, nodes


def _check_matrix_query(q: ExtremalQuery, settings: Settings) -> None:
    if not q.is_matrix:
        raise InvalidPatternError("ex_matrix needs a matrix query")
    if q.n > settings.matrix_n_guard:
        raise GuardExceededError(f"n={q.n} exceeds the matrix guard {settings.matrix_n_guard}")


def ex_matrix(q: ExtremalQuery, settings: Settings | None = None,
              mapper: Callable | None = None) -> ExtremalResult:
    """
    Largest number of ones in an n x n matrix that avoids the target.

    Raises:
        GuardExceededError: n above the matrix guard
    """
    settings = settings or Settings()
    _check_matrix_query(q, settings)
    if mapper is None:
        with worker_pool(settings.parallel) as pool_mapper:
            return ex_matrix(q, settings, pool_mapper)

    n = q.n
    avoids = MatrixAvoidance(q.target)
    cells = _cells(n)

    # Greedy incumbent: the first leaf of the ones-first search
    greedy: list[tuple[int, int]] = []
    for cell in cells:
        greedy.append(cell)
        if not avoids(_matrix(n, greedy)):
            greedy.pop()
    nodes = len(cells) + 1
    best_value, best = len(greedy), tuple(greedy)

    split = min(MATRIX_SPLIT_CELLS, len(cells))
    prefixes = []
    for bits in product((True, False), repeat=split):
        ones = [cell for cell, bit in zip(cells, bits) if bit]
        nodes += 1
        if avoids(_matrix(n, ones)):
            prefixes.append(bits)

    subtree = MatrixSubtree(avoids, n, best_value)
    for value, ones, below in mapper(subtree, prefixes):
        nodes += below
        if ones is not None and value > best_value:
            best_value, best = value, ones

    witness = _matrix(n, best)
    if witness.weight != best_value or not avoids(witness):
        raise InconsistencyError(f"matrix witness failed its re-check (value {best_value})")
    logger.info(f"ex_matrix n={n}: value {best_value}, {nodes} nodes")
    return ExtremalResult(n=n, value=best_value, witness=witness, nodes_explored=nodes)


def ex_matrix_exhaustive(target: MatrixPatterns | FormationFamily, n: int) -> ExtremalResult:
    """Naive maximum over all 2^(n*n) n x n matrices (n <= 4)."""
    if n > EXHAUSTIVE_MAX_N:
        raise GuardExceededError(f"exhaustive matrix search is limited to n <= {EXHAUSTIVE_MAX_N}")
    avoids = MatrixAvoidance(target)
    cells = _cells(n)
    best_value, best = -1, None
    for mask in range(1 << len(cells)):
        ones = tuple(cell for bit, cell in enumerate(cells) if mask >> bit & 1)
        if len(ones) > best_value and avoids(_matrix(n, ones)):
            best_value, best = len(ones), ones
    return ExtremalResult(n=n, value=best_value, witness=_matrix(n, best), nodes_explored=1 << len(cells))


def ex(q: ExtremalQuery, settings: Settings | None = None, mapper: Callable | None = None) -> ExtremalResult:
    if q.is_matrix:
        return ex_matrix(q, settings, mapper)
    return ex_sequence(q, settings, mapper)


# -----------------------------------------------------------------------------
# Reports
# -----------------------------------------------------------------------------

def check_general_bound(u: Sequence, n: int, settings: Settings | None = None,
                        mapper: Callable | None = None) -> GeneralBoundResult:
    """ex_u(u, n) <= zeta_{r, s-r+1}(n) with r = ||u||, s = |u|."""
    if not u.letters:
        raise InvalidPatternError("the general bound needs a non-empty sequence")
    r, s = u.distinct, u.length
    lhs = ex_sequence(ExtremalQuery(target=PatternFamily.of(u), n=n), settings, mapper)
    rhs = ex_sequence(ExtremalQuery(target=FormationFamily(r=r, s=s - r + 1), n=n), settings, mapper)
    return GeneralBoundResult(holds=lhs.value <= rhs.value, n=n, r=r, s=s - r + 1, lhs=lhs, rhs=rhs)


def linearity_probe(target: PatternFamily | MatrixPatterns | FormationFamily, n_max: int,
                    mode: ExtremalMode = ExtremalMode.MATRIX,
                    settings: Settings | None = None, mapper: Callable | None = None) -> LinearityProbe:
    """Exact values for n = 1..n_max with first differences."""
    settings = settings or Settings()
    if mapper is None:
        with worker_pool(settings.parallel) as pool_mapper:
            return linearity_probe(target, n_max, mode, settings, pool_mapper)
    values = [ex(ExtremalQuery(target=target, n=n, mode=mode), settings, mapper)
              for n in range(1, n_max + 1)]
    differences = [b.value - a.value for a, b in zip(values, values[1:])]
    return LinearityProbe(
        values=values,
        differences=differences,
        monotone=all(d >= 0 for d in differences),
        max_difference=max(differences, default=0),
    )
